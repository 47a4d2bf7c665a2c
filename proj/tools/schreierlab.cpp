#include "schreierlab/schreierlab.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

using namespace schreierlab;

namespace {

constexpr int kFailed = 1;
constexpr int kUsage = 2;

bool usage_error(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidSequence:
    case ErrorKind::UnknownSuite:
    case ErrorKind::NotMaximal:
      return true;
    default:
      return false;
  }
}

std::vector<Int> int_list(const std::string& s) { return detail::parse_int_list(s); }

template <class Write>
void write_file(const std::string& path, Write&& write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  write(out);
}

struct SpaceOptions {
  std::string kind = "s3";
  std::string profile;
  std::string alpha;
  std::string beta = "0";
  std::string m_seq = "2";
  std::string n_seq = "3";
  std::size_t support_cap = 12;
  std::size_t index_cap = 64;

  void attach(CLI::App* app) {
    app->add_option("--space", kind, "s3, s4aa or s4ab")->check(CLI::IsMember({"s3", "s4aa", "s4ab"}));
    app->add_option("--profile", profile, "gauge profile file for s3 (default: the desk profile)");
    app->add_option("--alpha", alpha, "order a for s4aa/s4ab (default 1 and 2)");
    app->add_option("--beta", beta, "order b for s4ab");
    app->add_option("--m-seq", m_seq, "comma list m_1,m_2,... for s4ab");
    app->add_option("--n-seq", n_seq, "comma list n_1,n_2,... for s4ab");
    app->add_option("--support-cap", support_cap, "largest support searched exactly by the s3 first seminorm");
    app->add_option("--index-cap", index_cap, "largest index searched exactly by the s3 first seminorm");
  }

  Space build() const {
    if (kind == "s3") {
      std::shared_ptr<const GaugeProfile> g;
      if (profile.empty()) {
        g = std::make_shared<const GaugeProfile>(GaugeProfile::build(desk_params(limits().precision_bits)));
      } else {
        std::ifstream in(profile);
        if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open profile '" + profile + "'");
        g = std::make_shared<const GaugeProfile>(GaugeProfile::read(in));
      }
      return ThreeSpace(g, SearchCaps{support_cap, index_cap, 256});
    }
    if (kind == "s4aa") return FourSpace(Ordinal::parse(alpha.empty() ? "1" : alpha));
    return FourSpace(Ordinal::parse(alpha.empty() ? "2" : alpha), Ordinal::parse(beta), int_list(m_seq),
                     int_list(n_seq));
  }
};

void print_bool(bool v) { std::cout << (v ? "true" : "false") << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schreier families, repeated averages, gauge profiles and the quasi-greedy space norms"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned precision_bits = 256;
  unsigned digit_cap = 2000;
  std::uint64_t seed = 1;
  auto* precision_opt = app.add_option("--precision-bits", precision_bits, "binary precision of reals")
                            ->check(CLI::Range(64u, 65536u));
  auto* digit_opt = app.add_option("--digit-cap", digit_cap, "decimal digits allowed in any big integer")
                        ->check(CLI::Range(10u, 1000000u));
  auto* seed_opt = app.add_option("--seed", seed, "random seed");

  std::function<int()> action;

  // schreier
  auto* schreier = app.add_subcommand("schreier", "Schreier family queries");
  schreier->require_subcommand(1);
  std::string alpha = "1", set_text, m_text = "1", n_text = "1";
  std::uint64_t count = 5;
  {
    auto* c = schreier->add_subcommand("member", "is the set in S_alpha");
    c->add_option("--alpha", alpha)->required();
    c->add_option("--set", set_text)->required();
    c->callback([&] { action = [&] { print_bool(is_member(FiniteSet::parse(set_text), Ordinal::parse(alpha))); return 0; }; });
  }
  {
    auto* c = schreier->add_subcommand("maximal", "is the set maximal in S_alpha");
    c->add_option("--alpha", alpha)->required();
    c->add_option("--set", set_text)->required();
    c->callback([&] { action = [&] { print_bool(is_maximal(FiniteSet::parse(set_text), Ordinal::parse(alpha))); return 0; }; });
  }
  {
    auto* c = schreier->add_subcommand("partition", "blocks A(alpha, m, k), k = 1..count");
    c->add_option("--alpha", alpha)->required();
    c->add_option("--m", m_text)->required();
    c->add_option("--count", count);
    c->callback([&] {
      action = [&] {
        Partition P(Ordinal::parse(alpha), parse_int(m_text));
        for (std::uint64_t k = 1; k <= count; ++k) std::cout << P.block(k).str() << "\n";
        return 0;
      };
    });
  }
  {
    auto* c = schreier->add_subcommand("tpack", "largest number of consecutive maximal S_alpha sets inside the set");
    c->add_option("--alpha", alpha)->required();
    c->add_option("--set", set_text)->required();
    c->callback([&] { action = [&] { std::cout << t_alpha(FiniteSet::parse(set_text), Ordinal::parse(alpha)) << "\n"; return 0; }; });
  }
  {
    auto* c = schreier->add_subcommand("mstar", "least m with [m, m+n-1] in S_alpha");
    c->add_option("--alpha", alpha)->required();
    c->add_option("--n", n_text)->required();
    c->callback([&] { action = [&] { std::cout << m_star(parse_int(n_text), Ordinal::parse(alpha)) << "\n"; return 0; }; });
  }

  // averages
  auto* averages = app.add_subcommand("averages", "repeated averages");
  averages->require_subcommand(1);
  std::string out_path;
  {
    auto* c = averages->add_subcommand("show", "run-length weights of x_(alpha, A) for a maximal A");
    c->add_option("--alpha", alpha)->required();
    c->add_option("--set", set_text)->required();
    c->add_option("--out", out_path, "write the JSON here instead of standard output");
    c->callback([&] {
      action = [&] {
        auto avg = repeated_average(Ordinal::parse(alpha), FiniteSet::parse(set_text));
        auto j = avg.to_json();
        if (out_path.empty()) {
          std::cout << j.dump(2) << "\n";
        } else {
          write_file(out_path, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
          std::cout << avg.runs().size() << " runs, first weight " << to_string(avg.first_weight()) << ", last weight "
                    << to_string(avg.last_weight()) << "\n";
        }
        return 0;
      };
    });
  }
  {
    auto* c = averages->add_subcommand("blocksum", "mass that consecutive block averages put on a set in S_alpha");
    c->add_option("--alpha", alpha)->required();
    c->add_option("--m", m_text)->required();
    c->add_option("--count", count);
    c->add_option("--set", set_text)->required();
    c->callback([&] {
      action = [&] {
        auto a = Ordinal::parse(alpha);
        auto s = block_sum(a, averages_along(a, parse_int(m_text), count), FiniteSet::parse(set_text));
        std::cout << to_string(s) << "\n";
        return s <= 6 ? 0 : kFailed;
      };
    });
  }

  // gauge
  auto* gauge = app.add_subcommand("gauge", "gauge profiles");
  gauge->require_subcommand(1);
  std::string profile_path, m_seq = "3", n_seq = "500", window_text;
  bool strict_chain = false;
  {
    auto* c = gauge->add_subcommand("build", "build a profile (default: the desk profile)");
    c->add_option("--alpha", alpha, "order a")->default_val("0");
    c->add_option("--m-seq", m_seq);
    c->add_option("--n-seq", n_seq);
    c->add_option("--window-max", window_text, "largest argument (default n_last * 2^n_last)");
    c->add_flag("--strict-chain", strict_chain, "fail instead of waiving chain links past the last period");
    c->add_option("--out", out_path)->required();
    c->callback([&] {
      action = [&] {
        GaugeParams p;
        p.alpha = Ordinal::parse(alpha);
        p.m_seq = int_list(m_seq);
        p.n_seq = int_list(n_seq);
        p.window_max = window_text.empty() ? Int(p.n_seq.back() << detail::to_index(p.n_seq.back(), "n"))
                                           : parse_int(window_text);
        p.precision_bits = limits().precision_bits;
        p.desk_relax = !strict_chain;
        auto g = GaugeProfile::build(p);
        write_file(out_path, [&](std::ostream& os) { g.write(os); });
        std::cout << g.breakpoints().size() << " breakpoints, " << g.hull().size() << " on the hull\n";
        for (const auto& link : g.chain())
          std::cout << "period " << link.period << ": " << link.relation << " "
                    << (link.verified ? "verified" : "waived") << " (" << link.detail << ")\n";
        return 0;
      };
    });
  }
  {
    auto* c = gauge->add_subcommand("dump", "breakpoints as CSV");
    c->add_option("--profile", profile_path)->required();
    c->add_option("--out", out_path, "CSV file (default: standard output)");
    c->callback([&] {
      action = [&] {
        std::ifstream in(profile_path);
        if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open profile '" + profile_path + "'");
        auto g = GaugeProfile::read(in);
        auto emit = [&](std::ostream& os) {
          os << "tag,period,index,x,psi_tilde,psi,phi\n";
          for (const auto& p : g.breakpoints())
            os << to_string(p.tag) << "," << p.period << "," << p.index << "," << decimal(p.x) << ","
               << decimal(p.value) << "," << decimal(g.psi(p.x)) << "," << decimal(g.phi(p.x)) << "\n";
        };
        if (out_path.empty()) emit(std::cout);
        else write_file(out_path, emit);
        return 0;
      };
    });
  }
  {
    auto* c = gauge->add_subcommand("check", "verify properties a)-f) at every breakpoint");
    c->add_option("--profile", profile_path)->required();
    c->add_option("--out", out_path, "JSON report");
    c->callback([&] {
      action = [&] {
        std::ifstream in(profile_path);
        if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open profile '" + profile_path + "'");
        auto g = GaugeProfile::read(in);
        CheckLog log;
        g.check_properties(log);
        std::cout << log.instances() << " checks, " << log.failure_count() << " failed\n";
        for (const auto& f : log.failures()) std::cout << "  " << f.what << "\n";
        if (!out_path.empty()) {
          nlohmann::json failures = nlohmann::json::array();
          for (const auto& f : log.failures()) failures.push_back({{"what", f.what}, {"replay", f.replay}});
          nlohmann::json j = {{"instances", log.instances()}, {"failure_count", log.failure_count()}, {"failures", failures}};
          write_file(out_path, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
        }
        return log.ok() ? 0 : kFailed;
      };
    });
  }

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "norm of a finitely supported vector");
  SpaceOptions space;
  space.attach(norm_cmd);
  std::string vector_path, witness;
  bool components = false;
  norm_cmd->add_option("file", vector_path, "JSON-lines vector file");
  norm_cmd->add_option("--vector", vector_path, "JSON-lines vector file");
  norm_cmd->add_option("--witness", witness, "built-in witness, e.g. eblock:4, xy:8:-, democracy:500, indicator:2:10");
  norm_cmd->add_flag("--components", components, "print every seminorm");
  norm_cmd->add_option("--out", out_path, "JSON result");
  norm_cmd->callback([&] {
    action = [&] {
      if (vector_path.empty() == witness.empty())
        throw Error(ErrorKind::InvalidArgument, "give exactly one of a vector file or --witness");
      Space X = space.build();
      BlockVector x;
      if (!witness.empty()) {
        x = make_witness(X, parse_witness(witness));
      } else {
        std::ifstream in(vector_path);
        if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open vector file '" + vector_path + "'");
        x = BlockVector::read_jsonl(in);
      }
      auto v = norm(X, x);
      nlohmann::json j = v.to_json();
      j["space"] = space_kind(X);
      if (components) {
        nlohmann::json parts = nlohmann::json::object();
        if (const auto* s = std::get_if<ThreeSpace>(&X)) {
          for (int i = 1; i <= 4; ++i) parts[std::to_string(i)] = s->seminorm(i, x).to_json();
        } else {
          const auto& f = std::get<FourSpace>(X);
          parts["0"] = decimal(f.seminorm0(x), 20);
          parts["1"] = decimal(f.seminorm1(x), 20);
          parts["2"] = decimal(f.seminorm2(x), 20);
          if (f.beta()) parts["beta"] = decimal(f.seminorm_beta(x), 20);
        }
        j["components"] = parts;
      }
      std::cout << decimal(v.value) << " " << (v.is_exact() ? "exact" : "lower_bound");
      if (!v.is_exact()) std::cout << " (upper " << decimal(v.upper) << ")";
      std::cout << " component " << v.component << "\n";
      if (components) std::cout << j["components"].dump(2) << "\n";
      if (!out_path.empty()) write_file(out_path, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
      return 0;
    };
  });

  // scan
  auto* scan = app.add_subcommand("scan", "empirical scans with CSV reports");
  SpaceOptions scan_space;
  scan_space.attach(scan);
  std::string scan_kind, gamma_text;
  ScanConfig scan_cfg;
  scan->add_option("kind", scan_kind, "qg, democracy or uncond")->required()->check(CLI::IsMember({"qg", "democracy", "uncond"}));
  scan->add_option("--trials", scan_cfg.trials);
  scan->add_option("--max-count", scan_cfg.max_count, "largest random support");
  scan->add_option("--max-index", scan_cfg.max_index, "largest random index");
  scan->add_option("--gamma", gamma_text, "family order for the sets A (default: the space order)");
  scan->add_option("--out", out_path, "CSV report");
  scan->callback([&] {
    action = [&] {
      Space X = scan_space.build();
      scan_cfg.seed = seed;
      Ordinal gamma = gamma_text.empty() ? space_alpha(X) : Ordinal::parse(gamma_text);
      ScanReport r = scan_kind == "qg" ? qg_scan(X, scan_cfg)
                     : scan_kind == "democracy" ? democracy_scan(X, gamma, scan_cfg)
                                                : uncond_scan(X, gamma, scan_cfg);
      if (!out_path.empty()) write_file(out_path, [&](std::ostream& os) { r.write_csv(os); });
      std::cout << r.summary().dump(2) << "\n";
      return r.ok() ? 0 : kFailed;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "run checker suites");
  std::vector<std::string> suite_ids;
  std::string config_path;
  bool timing = false, list = false;
  verify->add_option("suites", suite_ids, "suite ids, or 'all'");
  verify->add_option("--config", config_path, "key = value run configuration");
  verify->add_option("--out", out_path, "JSON results");
  verify->add_flag("--timing", timing, "record wall time per suite");
  verify->add_flag("--list", list, "list the suites and exit");
  verify->callback([&] {
    action = [&] {
      if (list) {
        for (const auto& s : suite_registry()) std::cout << s.id << "  " << s.claim << "\n";
        return 0;
      }
      if (suite_ids.empty()) throw Error(ErrorKind::InvalidArgument, "name suites or 'all'");
      RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
      if (seed_opt->count()) cfg.seed = seed;
      if (precision_opt->count()) cfg.precision_bits = precision_bits;
      if (digit_opt->count()) cfg.digit_cap = digit_cap;
      if (timing) cfg.timing = true;
      std::vector<std::string> ids;
      for (const auto& id : suite_ids) {
        if (id == "all") {
          auto every = all_suite_ids();
          ids.insert(ids.end(), every.begin(), every.end());
        } else {
          find_suite(id);
          ids.push_back(id);
        }
      }
      VerifyContext ctx(cfg);
      auto results = run_suites(ids, ctx);
      for (const auto& r : results) {
        std::cout << r.status() << "  " << r.id << "  " << r.log.instances() << " instances";
        if (r.log.failure_count()) std::cout << ", " << r.log.failure_count() << " failed";
        if (!r.log.skipped().empty()) std::cout << ", " << r.log.skipped().size() << " skipped";
        std::cout << "\n";
      }
      if (!out_path.empty())
        write_file(out_path, [&](std::ostream& os) { os << results_json(cfg, results).dump(2) << "\n"; });
      std::vector<std::string> failing;
      for (const auto& r : results)
        if (!r.log.ok()) failing.push_back(r.id);
      if (failing.empty()) return 0;
      std::cerr << "failing suites:";
      for (const auto& id : failing) std::cerr << " " << id;
      std::cerr << "\n";
      return kFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    Limits l = limits();
    l.precision_bits = precision_bits;
    l.digit_cap = digit_cap;
    LimitsScope scope(l);
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_error(e) ? kUsage : kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
