#include "fdk/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "fdk/applications.hpp"
#include "fdk/constructions.hpp"
#include "fdk/duality.hpp"
#include "fdk/errors.hpp"
#include "fdk/euclid.hpp"
#include "fdk/io.hpp"
#include "fdk/search.hpp"

namespace fdk::cli {

namespace {

using io::Json;

// Raised for bad option values that CLI11 cannot validate itself.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoll(s, &pos);
    if (pos != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("not an integer: '" + s + "'");
  }
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const auto v = std::stod(s, &pos);
    if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("not a number: '" + s + "'");
  }
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part));
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_double(part));
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

FiniteAbelianGroup parse_group(const std::string& s) {
  const auto orders = parse_ints(s);
  for (auto n : orders) {
    if (n < 1) throw UsageError("group orders must be positive");
  }
  return FiniteAbelianGroup(orders);
}

// "1,0;0,1" -> elements of g.
std::vector<GroupElement> parse_elements(const FiniteAbelianGroup& g, const std::string& s) {
  std::vector<GroupElement> out;
  for (const auto& part : split(s, ';')) {
    if (part.empty()) continue;
    auto r = parse_ints(part);
    if (r.size() != g.rank()) throw UsageError("element '" + part + "' has the wrong number of coordinates");
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = ((r[i] % g.order(i)) + g.order(i)) % g.order(i);
    out.emplace_back(g, std::move(r));
  }
  return out;
}

DualPair load_dual_pair(const std::string& path) {
  const auto doc = io::pair_document_from_text(io::read_file(path));
  try {
    return io::pair_from_document(doc);
  } catch (const std::logic_error&) {
    throw UsageError(path + " does not hold a formally dual pair");
  }
}

struct Emitter {
  std::ostream& out;
  std::string path;

  void operator()(const std::string& text) const {
    if (path.empty()) {
      out << text;
    } else {
      io::write_file(path, text);
    }
  }
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Formal duality toolkit: exact checks, constructions, searches and Euclidean realizations"};
    app.name("fdk");
    app.require_subcommand(1);

    add_check(app);
    add_construct(app);
    add_search(app);
    add_scans(app);
    add_euclid(app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp& e) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        app.exit(e, out_, err_);
        return kOk;
      }
      err_ << "error: " << e.what() << "\n";
      for (const auto* sub : app.get_subcommands()) err_ << sub->help();
      if (app.get_subcommands().empty()) err_ << app.help();
      return kUsage;
    }

    try {
      return action_();
    } catch (const CapacityError& e) {
      err_ << "capacity: " << e.what() << "\n";
      return kCapacity;
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const std::runtime_error& e) {
      err_ << "error: " << e.what() << "\n";
      return kUsage;
    }
  }

 private:
  Emitter emitter() const { return {out_, output_}; }

  void add_common(CLI::App* sub, bool with_jobs = true) {
    sub->add_option("-o,--output", output_, "Write the payload to a file instead of standard output");
    if (with_jobs) sub->add_option("-j,--jobs", jobs_, "Worker threads (0: FDK_JOBS or the OpenMP default)");
  }

  void add_check(CLI::App& app) {
    auto* sub = app.add_subcommand("check", "Verify a pair file and print its duality certificate");
    sub->add_option("pair", pair_path_, "DualPair JSON file")->required();
    add_common(sub);
    sub->callback([this] {
      action_ = [this] {
        const auto doc = io::pair_document_from_text(io::read_file(pair_path_));
        const auto cert = check_formal_dual(doc.s, doc.t, jobs_);
        emitter()(io::dump(io::to_json(cert)));
        return cert.is_dual() ? kOk : kNegative;
      };
    });
  }

  void add_construct(CLI::App& app) {
    auto* sub = app.add_subcommand("construct", "Build a known dual pair");
    sub->require_subcommand(1);

    auto* t = sub->add_subcommand("tito", "S = {0, 1}, T = {0, 1} in Z/4");
    add_common(t, false);
    t->callback([this] { action_ = [this] { return emit_pair(tito()); }; });

    auto* g = sub->add_subcommand("gauss", "Quadratic-residue pair in (Z/p)^2");
    g->add_option("-p", p_, "Odd prime")->required();
    g->add_option("-a,--alpha", alpha_, "alpha, nonzero mod p")->required();
    g->add_option("-b,--beta", beta_, "beta, nonzero mod p")->required();
    add_common(g, false);
    g->callback([this] { action_ = [this] { return emit_pair(gauss_pair(p_, alpha_, beta_)); }; });

    auto* pr = sub->add_subcommand("product", "Direct product of two pair files");
    pr->add_option("first", pair_path_, "First DualPair JSON")->required();
    pr->add_option("second", second_path_, "Second DualPair JSON")->required();
    add_common(pr, false);
    pr->callback([this] {
      action_ = [this] { return emit_pair(product(load_dual_pair(pair_path_), load_dual_pair(second_path_))); };
    });

    auto* l = sub->add_subcommand("lift", "Push a pair forward along an injective homomorphism");
    l->add_option("pair", pair_path_, "DualPair JSON")->required();
    l->add_option("--target", group_text_, "Target group orders, e.g. 8 or 4,2")->required();
    l->add_option("--images", images_text_, "Images of the source generators, e.g. '2' or '1,0;0,1'")->required();
    add_common(l, false);
    l->callback([this] {
      action_ = [this] {
        const auto pair = load_dual_pair(pair_path_);
        const auto target = parse_group(group_text_);
        return emit_pair(lift(pair, Homomorphism(pair.group(), target, parse_elements(target, images_text_))));
      };
    });

    auto* sg = sub->add_subcommand("subgroup", "S = <gens>, T = its annihilator");
    sg->add_option("--group", group_text_, "Group orders, e.g. 4,4")->required();
    sg->add_option("--gens", gens_text_, "Generators, e.g. '2,0;0,2'")->required();
    add_common(sg, false);
    sg->callback([this] {
      action_ = [this] {
        const auto grp = parse_group(group_text_);
        return emit_pair(subgroup_pair(grp, parse_elements(grp, gens_text_)));
      };
    });
  }

  int emit_pair(const DualPair& pair) {
    emitter()(io::dump(io::to_json(pair)));
    return kOk;
  }

  void add_search(CLI::App& app) {
    auto* sub = app.add_subcommand("search", "Classify primitive dual pairs with |S| = N up to equivalence");
    sub->add_option("--group", group_text_, "Group orders, e.g. 4 or 3,3")->required();
    sub->add_option("--size", size_, "|S|, a divisor of |G|")->required();
    sub->add_flag("--csv", csv_, "Print the orbit table as CSV");
    sub->add_flag("--no-timing", no_timing_, "Leave the elapsed_ms field out of the report");
    sub->add_flag("-q,--quiet", quiet_, "No progress messages");
    add_common(sub);
    sub->callback([this] {
      action_ = [this] { return emit_report(classify(parse_group(group_text_), size_, classify_options())); };
    });
  }

  ClassifyOptions classify_options() {
    ClassifyOptions opts;
    opts.jobs = jobs_;
    if (!quiet_) opts.progress = [this](const std::string& msg) { err_ << "progress: " << msg << "\n"; };
    return opts;
  }

  int emit_report(const SearchReport& report) {
    emitter()(csv_ ? io::orbits_csv(report) : io::dump(io::to_json(report, !no_timing_)));
    return kOk;
  }

  void add_scans(CLI::App& app) {
    auto* b = app.add_subcommand("scan-barlow", "Run the Barlow pipeline on every normalized sequence up to k_max layers");
    b->add_option("--kmax", k_max_, "Largest number of layers")->check(CLI::Range(2, 30));
    b->add_flag("--csv", csv_, "Print the verdict table as CSV");
    add_common(b);
    b->callback([this] {
      action_ = [this] {
        const auto scan = barlow_scan(k_max_, jobs_);
        emitter()(csv_ ? io::barlow_csv(scan) : io::dump(io::to_json(scan)));
        return scan.consistent() ? kOk : kNegative;
      };
    });

    auto* ps = app.add_subcommand("scan-psquared", "Look for subsets of Z/p^2 whose differences are exactly the units");
    ps->add_option("-p", p_, "Odd prime, at most 7")->required();
    add_common(ps);
    ps->callback([this] {
      action_ = [this] {
        const bool none = psquared_difference_scan(p_, jobs_);
        emitter()(io::dump(Json{{"schema", io::kSchema},
                                {"p", p_},
                                {"modulus", p_ * p_},
                                {"candidates_examined", static_cast<double>(std::pow(p_, p_ - 1))},
                                {"unit_difference_subset_exists", !none}}));
        return none ? kOk : kNegative;
      };
    });

    auto* c = app.add_subcommand("scan-cyclic", "Classify primitive dual pairs in Z/p^2 with |S| = p");
    c->add_option("-p", p_, "3 or 5")->required();
    c->add_flag("--no-timing", no_timing_, "Leave the elapsed_ms field out of the report");
    c->add_flag("-q,--quiet", quiet_, "No progress messages");
    add_common(c);
    c->callback([this] {
      action_ = [this] {
        if (!is_odd_prime(p_)) throw UsageError("-p must be an odd prime");
        if (p_ > 5) throw CapacityError("scan-cyclic supports p in {3, 5}");
        return emit_report(classify(FiniteAbelianGroup({p_ * p_}), p_, classify_options()));
      };
    });

    auto* best = app.add_subcommand("best-obstruction", "Divisibility obstruction for a 40-point code in (Z/2)^10");
    best->add_option("--codewords", codewords_, "File with one length-10 binary word per line");
    add_common(best, false);
    best->callback([this] {
      action_ = [this] {
        auto report = best_packing_obstruction();
        Json j{{"schema", io::kSchema}};
        if (!codewords_.empty()) {
          const auto code = load_binary_code(codewords_);
          report = divisibility_obstruction(code.size(), code.group().size());
          j["codewords_file"] = codewords_;
        }
        j["subset_size"] = report.subset_size;
        j["group_size"] = report.group_size;
        j["obstructed"] = report.obstructed;
        emitter()(io::dump(j));
        return report.obstructed ? kOk : kNegative;
      };
    });
  }

  void add_euclid(CLI::App& app) {
    auto* sub = app.add_subcommand("euclid-verify", "Numerically check the pair-sum identity for a realized pair");
    sub->add_option("pair", pair_path_, "DualPair JSON file");
    sub->add_option("--family", family_, "tito | gauss:p,a,b | dnplus:n,alpha | p6:alpha");
    sub->add_option("--c", widths_, "Gaussian widths, comma separated")->default_str("0.5,1,2");
    sub->add_option("--shift", shifts_, "Shift vector (a single number s means s e_1); repeatable")
        ->take_all()
        ->default_str("0 0.3");
    sub->add_option("--tol", tol_, "Residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tail", tail_, "Tail bound for each truncated sum (default tol/100)");
    add_common(sub);
    sub->callback([this] { action_ = [this] { return euclid_verify(); }; });
  }

  std::pair<PeriodicConfiguration, PeriodicConfiguration> euclid_pair(Json& source) {
    if (!pair_path_.empty() && !family_.empty()) throw UsageError("give either a pair file or --family, not both");
    if (!family_.empty()) {
      const auto colon = family_.find(':');
      const auto name = family_.substr(0, colon);
      const auto params = colon == std::string::npos ? std::string() : family_.substr(colon + 1);
      source = Json{{"family", family_}};
      if (name == "tito") return realize(tito());
      if (name == "gauss") {
        const auto v = parse_ints(params);
        if (v.size() != 3) throw UsageError("gauss family needs p,a,b");
        return realize(gauss_pair(v[0], v[1], v[2]));
      }
      std::optional<PeriodicConfiguration> p;
      if (name == "dnplus") {
        const auto v = parse_doubles(params);
        if (v.size() != 2 || v[0] != std::round(v[0])) throw UsageError("dnplus family needs n,alpha");
        p = dn_plus(static_cast<int>(v[0]), v[1]);
      } else if (name == "p6") {
        const auto v = parse_doubles(params);
        if (v.size() != 1) throw UsageError("p6 family needs alpha");
        p = p6(v[0]);
      } else {
        throw UsageError("unknown family '" + name + "'");
      }
      auto q = formal_dual_of(*p);
      if (!q) throw std::logic_error("no group-level dual for the family presentation");
      return {*p, *q};
    }
    if (pair_path_.empty()) throw UsageError("euclid-verify needs a pair file or --family");
    source = Json{{"pair_file", pair_path_}};
    const auto doc = io::pair_document_from_text(io::read_file(pair_path_));
    if (!check_formal_dual(doc.s, doc.t).is_dual()) {
      // Realize anyway: the numeric check then serves as a negative control.
      return realize(doc.s, doc.t);
    }
    return realize(io::pair_from_document(doc));
  }

  int euclid_verify() {
    Json source;
    const auto [p, q] = euclid_pair(source);
    const int n = p.dimension();
    std::vector<double> widths = widths_.empty() ? std::vector<double>{0.5, 1, 2} : std::vector<double>{};
    for (const auto& w : widths_) {
      for (double c : parse_doubles(w)) widths.push_back(c);
    }
    std::vector<Eigen::VectorXd> shifts;
    const auto shift_texts = shifts_.empty() ? std::vector<std::string>{"0", "0.3"} : shifts_;
    for (const auto& s : shift_texts) {
      const auto v = parse_doubles(s);
      Eigen::VectorXd shift = Eigen::VectorXd::Zero(n);
      if (v.size() == 1) {
        shift(0) = v[0];
      } else if (static_cast<int>(v.size()) == n) {
        for (int i = 0; i < n; ++i) shift(i) = v[static_cast<std::size_t>(i)];
      } else {
        throw UsageError("shift '" + s + "' does not match dimension " + std::to_string(n));
      }
      shifts.push_back(shift);
    }
    std::vector<GaussianTest> tests;
    for (double c : widths) {
      for (const auto& s : shifts) tests.emplace_back(c, s);
    }
    const auto report = verify_duality_numeric(p, q, tests, tol_, tail_, jobs_);
    Json j{{"schema", io::kSchema}, {"source", source}, {"P", io::to_json(p)}, {"Q", io::to_json(q)}};
    j["report"] = io::to_json(report);
    emitter()(io::dump(j));
    return report.passed ? kOk : kNegative;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::function<int()> action_;

  std::string output_;
  int jobs_ = 0;
  std::string pair_path_, second_path_, group_text_, images_text_, gens_text_, codewords_, family_;
  std::int64_t p_ = 0, alpha_ = 0, beta_ = 0, size_ = 0, k_max_ = 12;
  bool csv_ = false, no_timing_ = false, quiet_ = false;
  std::vector<std::string> widths_, shifts_;
  double tol_ = 1e-8;
  std::optional<double> tail_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(out, err);
  try {
    return runner.run(args);
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace fdk::cli
