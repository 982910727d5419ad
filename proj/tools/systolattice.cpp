#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "syslat/io.hpp"
#include "syslat/search.hpp"

namespace {

using nlohmann::json;
using namespace syslat;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Common {
  bool json = false;
  bool deterministic = false;
  std::uint64_t seed = 0;
  int threads = 1;
  std::int64_t budget = 10'000'000;

  EnumerationOptions enum_opts() const {
    EnumerationOptions opts;
    opts.node_budget = budget;
    opts.optimizer.seed = seed;
    return opts;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_flag("--json", c.json, "emit JSON-lines records to stdout");
  cmd->add_flag("--deterministic", c.deterministic,
                "suppress the run timestamp for byte-reproducible output");
  cmd->add_option("--seed", c.seed, "seed for every random choice (default 0)");
  cmd->add_option("--threads", c.threads, "worker threads for batch runs")
      ->check(CLI::Range(1, 64));
  cmd->add_option("--budget", c.budget, "enumeration node cap")
      ->check(CLI::Range(static_cast<std::int64_t>(1),
                         static_cast<std::int64_t>(1) << 40));
}

struct StatusTally {
  bool fail = false;
  bool inconclusive = false;
  bool error = false;

  void add(Status s) {
    fail = fail || s == Status::Fail;
    inconclusive = inconclusive || s == Status::HeuristicInconclusive;
    error = error || s == Status::Error;
  }
  int exit_code() const {
    if (error) return 2;
    if (fail) return 1;
    if (inconclusive) return 3;
    return 0;
  }
};

class Emitter {
 public:
  Emitter(const Common& common, std::string command)
      : common_(common), command_(std::move(command)) {}

  void emit(json record) {
    if (common_.json) {
      if (!header_done_) {
        json run{{"record", "run"},
                 {"schema", kSchemaVersion},
                 {"command", command_},
                 {"seed", common_.seed}};
        if (!common_.deterministic) run["timestamp"] = iso_timestamp();
        std::cout << run.dump() << "\n";
        header_done_ = true;
      }
      std::cout << record.dump() << "\n";
    }
  }

  void text(const std::string& line) {
    if (!common_.json) std::cout << line << "\n";
  }

 private:
  Common common_;
  std::string command_;
  bool header_done_ = false;
};

std::string format_params(const Certificate& cert) {
  std::string out;
  for (const auto& [key, value] : cert.params) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%.6g ", key.c_str(), value);
    out += buf;
  }
  return out;
}

void emit_certificate(Emitter& emitter, StatusTally& tally,
                      const Certificate& cert) {
  tally.add(cert.status);
  emitter.emit(certificate_to_json(cert));
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %-24s lhs=%-14.9g rhs=%-14.9g ratio=%-10.6g %s",
                cert.inequality.c_str(), format_params(cert).c_str(), cert.lhs,
                cert.rhs, cert.ratio, to_string(cert.status).c_str());
  emitter.text(buf);
}

void emit_lattice(Emitter& emitter, const Lattice& lattice) {
  json j = lattice_to_json(lattice);
  j["record"] = "lattice";
  j["schema"] = kSchemaVersion;
  emitter.emit(j);
  char buf[64];
  std::snprintf(buf, sizeof buf, "dim %d  covolume %.12g", lattice.dim(),
                lattice.covolume());
  emitter.text(buf);
  for (int i = 0; i < lattice.dim(); ++i) {
    std::string row = "  ";
    for (int k = 0; k < lattice.dim(); ++k) {
      char cell[32];
      std::snprintf(cell, sizeof cell, "%12.6f ", lattice.basis()(i, k));
      row += cell;
    }
    emitter.text(row);
  }
}

void emit_minima(Emitter& emitter, const MinimaProfile& profile) {
  emitter.emit(minima_profile_to_json(profile));
  emitter.text("norm: " + profile.norm.name() +
               (profile.heuristic ? "  (heuristic)" : ""));
  for (size_t i = 0; i < profile.values.size(); ++i) {
    std::string row;
    char head[64];
    std::snprintf(head, sizeof head, "  lambda_%zu = %.12g   coeffs (", i + 1,
                  profile.values[i]);
    row += head;
    const auto& c = profile.vectors[i].coeffs;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      row += std::to_string(c(k));
      if (k + 1 < c.size()) row += ",";
    }
    row += ")";
    emitter.text(row);
  }
}

void emit_systole(Emitter& emitter, const SystoleReport& report) {
  emitter.emit(systole_report_to_json(report));
  char buf[160];
  std::snprintf(buf, sizeof buf, "p=%d  value=%.12g%s%s", report.p, report.value,
                report.heuristic ? "  (heuristic)" : "",
                report.notes.empty() ? "" : ("  [" + report.notes + "]").c_str());
  emitter.text(buf);
}

Lattice lattice_for_index(const std::string& path, int dim, std::uint64_t seed,
                          int index) {
  if (!path.empty()) return load_lattice(path);
  return random_lattice(dim, seed + static_cast<std::uint64_t>(index));
}

std::vector<Certificate> run_verifier(const std::string& ineq, const Lattice& lattice,
                                      std::optional<int> p, std::optional<int> q,
                                      std::optional<double> big_d,
                                      const EnumerationOptions& opts) {
  const int n = lattice.dim();
  if (ineq == "transference") return verify_transference(lattice, opts);
  if (ineq == "banaszczyk") {
    return verify_banaszczyk_general(lattice, p.value_or(1), opts);
  }
  if (ineq == "minkowski") {
    double d = big_d.value_or(0.0);
    if (!big_d) {
      const auto profile =
          successive_minima(lattice, NormSpec::euclidean(), 1, opts);
      d = 1.0 / profile.values[0];
    }
    return {verify_minkowski(lattice, d, opts)};
  }
  const FlatTorus torus(lattice);
  if (ineq == "cor-c") return {verify_corollary_c(torus, opts)};
  if (ineq == "cor-d") return {verify_corollary_d(torus, opts)};
  if (ineq == "thm-b") {
    int pp = p.value_or(n / 2);
    int qq = q.value_or(n - pp);
    if (!p && !q && n % 2 != 0) {
      throw InputError("thm-b: pass --p/--q (p+q must equal dim)");
    }
    return {verify_theorem_b(torus, pp, qq, opts)};
  }
  if (ineq == "thm-e") {
    if (!p) throw InputError("thm-e: pass --p with p dividing dim");
    return {verify_theorem_e(torus, *p, opts)};
  }
  if (ineq == "thm-81") {
    int pp = p.value_or(n % 3 == 0 ? n / 3 : 0);
    if (pp == 0) throw InputError("thm-81: dim must equal 3p");
    return {verify_theorem_81(torus, pp, opts)};
  }
  throw InputError("--ineq: unknown inequality '" + ineq +
                   "'; expected cor-c|thm-b|cor-d|thm-81|thm-e|transference|"
                   "banaszczyk|minkowski");
}

// Ordered parallel map: results come back indexed so output is independent
// of the thread count.
template <typename Fn>
auto ordered_parallel(int count, int threads, Fn&& fn) {
  using Result = decltype(fn(0));
  std::vector<Result> results(count);
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        while (true) {
          const int i = next.fetch_add(1);
          if (i >= count) break;
          results[i] = fn(i);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

int cmd_verify(const Common& common, const std::string& ineq,
               const std::string& path, int random_count, int random_dim,
               std::optional<int> p, std::optional<int> q,
               std::optional<double> big_d) {
  Emitter emitter(common, "verify");
  StatusTally tally;
  const int count = path.empty() ? random_count : 1;
  if (path.empty() && random_count < 1) {
    throw InputError("verify: pass --lattice FILE or --random COUNT --dim B");
  }
  auto certificates = ordered_parallel(count, common.threads, [&](int i) {
    const Lattice lattice = lattice_for_index(path, random_dim, common.seed, i);
    return run_verifier(ineq, lattice, p, q, big_d, common.enum_opts());
  });
  for (const auto& batch : certificates) {
    for (const Certificate& cert : batch) emit_certificate(emitter, tally, cert);
  }
  return tally.exit_code();
}

int cmd_report(const Common& common, int count, int dim) {
  Emitter emitter(common, "report");
  StatusTally tally;

  auto run_one = [&](int i) {
    const Lattice lattice = random_lattice(dim, common.seed + i);
    const FlatTorus torus(lattice);
    const auto opts = common.enum_opts();
    std::vector<Certificate> certs = verify_transference(lattice, opts);
    {
      const auto profile =
          successive_minima(lattice, NormSpec::euclidean(), 1, opts);
      certs.push_back(verify_minkowski(lattice, 1.0 / profile.values[0], opts));
    }
    if (dim >= 2) certs.push_back(verify_corollary_c(torus, opts));
    // Exact-norm degrees only; heuristic middle degrees are opt-in via `verify`.
    if (dim % 2 == 0 && NormSpec::mass_norm(dim, dim / 2).exact()) {
      certs.push_back(verify_theorem_b(torus, dim / 2, dim / 2, opts));
      certs.push_back(verify_corollary_d(torus, opts));
    }
    if (dim >= 2) certs.push_back(verify_theorem_e(torus, 1, opts));
    if (dim % 3 == 0 && NormSpec::mass_norm(dim, dim / 3).exact()) {
      certs.push_back(verify_theorem_81(torus, dim / 3, opts));
    }
    return certs;
  };

  const auto batches = ordered_parallel(count, common.threads, run_one);
  std::map<std::string, std::vector<double>> ratios;
  std::map<std::string, std::map<std::string, int>> statuses;
  for (const auto& batch : batches) {
    for (const Certificate& cert : batch) {
      tally.add(cert.status);
      ratios[cert.inequality].push_back(cert.ratio);
      ++statuses[cert.inequality][to_string(cert.status)];
    }
  }
  for (auto& [ineq, values] : ratios) {
    std::sort(values.begin(), values.end());
    const double median = values[values.size() / 2];
    json status_counts = json::object();
    for (const auto& [name, k] : statuses[ineq]) status_counts[name] = k;
    emitter.emit(json{{"record", "summary"},
                      {"schema", kSchemaVersion},
                      {"inequality", ineq},
                      {"count", values.size()},
                      {"min_ratio", values.front()},
                      {"median_ratio", median},
                      {"max_ratio", values.back()},
                      {"statuses", status_counts}});
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "%-14s n=%-4zu ratio min=%-10.6g median=%-10.6g max=%-10.6g",
                  ineq.c_str(), values.size(), values.front(), median,
                  values.back());
    emitter.text(buf);
  }
  return tally.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"systolattice: systolic inequalities on flat tori, "
               "lattice minima, and dual-critical search"};
  app.require_subcommand(1);
  bool show_schema = false;
  app.add_flag("--schema", show_schema, "print the JSON record schemas and exit");

  Common common;
  std::string lattice_path;
  std::string norm_text = "euclidean";
  std::string ineq;
  int count = 1, degree_p = 0, degree_q = 0, dim = 0, random_count = 0;
  int search_b = 2, search_starts = 32, search_iters = 2000;
  int wedge_n = 0, wedge_p = 0;
  bool conformal = false;
  double delta = kDefaultLllDelta;
  double big_d = 0.0;

  auto* c_dual = app.add_subcommand("dual", "dual lattice");
  c_dual->add_option("--lattice", lattice_path, "lattice JSON file")->required();
  add_common(c_dual, common);

  auto* c_reduce = app.add_subcommand("reduce", "LLL-reduce a lattice");
  c_reduce->add_option("--lattice", lattice_path)->required();
  c_reduce->add_option("--delta", delta, "Lovasz parameter in (1/4, 1)")
      ->check(CLI::Range(0.2500001, 0.9999999));
  add_common(c_reduce, common);

  auto* c_minima = app.add_subcommand("minima", "successive minima");
  c_minima->add_option("--lattice", lattice_path)->required();
  c_minima->add_option("--norm", norm_text, "euclidean | mass:P | comass:P");
  c_minima->add_option("--count", count, "how many minima")->check(CLI::Range(1, 64));
  add_common(c_minima, common);

  auto* c_systole = app.add_subcommand("systole", "stable/conformal systoles");
  c_systole->add_option("--lattice", lattice_path)->required();
  c_systole->add_option("--p", degree_p, "degree")->check(CLI::Range(1, 32));
  c_systole->add_flag("--conformal", conformal, "conformal systole (p = n/2)");
  add_common(c_systole, common);

  auto* c_verify = app.add_subcommand("verify", "check one inequality");
  c_verify->add_option("--ineq", ineq,
                       "cor-c|thm-b|cor-d|thm-81|thm-e|transference|banaszczyk|minkowski")
      ->required();
  c_verify->add_option("--lattice", lattice_path);
  c_verify->add_option("--random", random_count, "verify COUNT random lattices")
      ->check(CLI::Range(1, 100000));
  c_verify->add_option("--dim", dim, "dimension for --random")->check(CLI::Range(1, 16));
  c_verify->add_option("--p", degree_p)->check(CLI::Range(1, 32));
  c_verify->add_option("--q", degree_q)->check(CLI::Range(1, 32));
  c_verify->add_option("--D", big_d, "Minkowski D (default 1/lambda_1)")
      ->check(CLI::PositiveNumber);
  add_common(c_verify, common);

  auto* c_search = app.add_subcommand("search-bm", "dual-critical lattice search");
  c_search->add_option("--b", search_b, "rank")->required()->check(CLI::Range(1, 12));
  c_search->add_option("--starts", search_starts)->check(CLI::Range(1, 4096));
  c_search->add_option("--iters", search_iters)->check(CLI::Range(1, 10000000));
  add_common(c_search, common);

  auto* c_report = app.add_subcommand("report", "random-ensemble summary");
  c_report->add_option("--random", random_count, "ensemble size")
      ->required()
      ->check(CLI::Range(1, 100000));
  c_report->add_option("--dim", dim, "lattice dimension")
      ->required()
      ->check(CLI::Range(2, 16));
  add_common(c_report, common);

  auto* c_wedge = app.add_subcommand("wedge-index",
                                     "lexicographic wedge coordinate order");
  c_wedge->add_option("--n", wedge_n, "ambient dimension")->required()->check(CLI::Range(1, 32));
  c_wedge->add_option("--p", wedge_p, "degree")->required()->check(CLI::Range(0, 32));
  add_common(c_wedge, common);

  auto* c_schema = app.add_subcommand("schema", "print the JSON record schemas");
  add_common(c_schema, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (show_schema) {
    std::cout << syslat::record_schemas().dump(2) << "\n";
    return 0;
  }

  try {
    if (c_schema->parsed()) {
      std::cout << syslat::record_schemas().dump(2) << "\n";
      return 0;
    }
    if (c_dual->parsed()) {
      Emitter emitter(common, "dual");
      emit_lattice(emitter, syslat::dual(load_lattice(lattice_path)));
      return 0;
    }
    if (c_reduce->parsed()) {
      Emitter emitter(common, "reduce");
      emit_lattice(emitter, lll_reduce(load_lattice(lattice_path), delta));
      return 0;
    }
    if (c_minima->parsed()) {
      Emitter emitter(common, "minima");
      const Lattice lattice = load_lattice(lattice_path);
      const NormSpec norm = NormSpec::parse(norm_text, lattice.dim());
      emit_minima(emitter,
                  successive_minima(lattice, norm, count, common.enum_opts()));
      return 0;
    }
    if (c_systole->parsed()) {
      Emitter emitter(common, "systole");
      const Lattice lattice = load_lattice(lattice_path);
      const FlatTorus torus(lattice);
      if (conformal) {
        const int p = degree_p > 0 ? degree_p : torus.dim() / 2;
        emit_systole(emitter, conformal_systole(torus, p, common.enum_opts()));
      } else {
        if (degree_p < 1) throw InputError("systole: pass --p or --conformal");
        emit_systole(emitter, stable_systole(torus, degree_p, common.enum_opts()));
      }
      return 0;
    }
    if (c_verify->parsed()) {
      return cmd_verify(common, ineq, lattice_path, random_count, dim,
                        degree_p > 0 ? std::optional<int>(degree_p) : std::nullopt,
                        degree_q > 0 ? std::optional<int>(degree_q) : std::nullopt,
                        big_d > 0 ? std::optional<double>(big_d) : std::nullopt);
    }
    if (c_search->parsed()) {
      Emitter emitter(common, "search-bm");
      SearchOptions opts;
      opts.starts = search_starts;
      opts.iters = search_iters;
      opts.seed = common.seed;
      opts.node_budget = common.budget;
      const SearchResult result = search_dual_critical(search_b, opts);
      emitter.emit(search_result_to_json(result));
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "b=%d  objective=%.9g  lambda1=%.9g  dual_lambda1=%.9g (start %d)",
                    search_b, result.objective, result.lambda1,
                    result.dual_lambda1, result.best_start);
      emitter.text(buf);
      return 0;
    }
    if (c_report->parsed()) {
      return cmd_report(common, random_count, dim);
    }
    if (c_wedge->parsed()) {
      Emitter emitter(common, "wedge-index");
      const auto& table = wedge_index_table(wedge_n, wedge_p);
      json order = json::array();
      for (const auto& subset : table) {
        json s = json::array();
        for (int v : subset) s.push_back(v + 1);  // 1-based as printed
        order.push_back(std::move(s));
      }
      emitter.emit(json{{"record", "wedge-index"},
                        {"schema", kSchemaVersion},
                        {"n", wedge_n},
                        {"p", wedge_p},
                        {"order", order}});
      for (size_t k = 0; k < table.size(); ++k) {
        std::string line = std::to_string(k) + ": e_";
        for (size_t i = 0; i < table[k].size(); ++i) {
          line += std::to_string(table[k][i] + 1);
          if (i + 1 < table[k].size()) line += "^e_";
        }
        emitter.text(line);
      }
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
