// zsum: command-line front end. Every command reads JSON from --input (a path
// or "-" for standard input) and writes one JSON document to standard output.
//
// Exit codes: 0 success, 1 malformed input or class violation, 2 not
// sum-full, 3 budget exceeded, 4 internal verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <thread>
#include <vector>

#include "zerosum/io.hpp"
#include "zerosum/zerosum.hpp"

namespace {

using nlohmann::json;
using namespace zerosum;

enum Exit : int { kOk = 0, kMalformed = 1, kNotSumFull = 2, kBudget = 3, kInternal = 4 };

struct Options {
  std::string input = "-";
  std::string certificate;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  double budget = 60.0;
  std::size_t workers = 1;
  std::size_t max_n = 25;
  bool verify_witness = false;
  std::string mode = "prune_closure";
  std::int64_t bound = 50;
};

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

int cmd_check(const Options& o) {
  auto a = io::instance_from_json(read_json(o.input));
  auto result = check_sum_full(a);
  if (auto* bad = std::get_if<NotSumFull>(&result)) {
    emit({{"format", io::kFormat}, {"sum_full", false}, {"index", bad->index}, {"element", io::to_json(a[bad->index])}});
    return kNotSumFull;
  }
  emit({{"format", io::kFormat},
        {"sum_full", true},
        {"elements", io::to_json(a.elements())},
        {"representations", io::to_json(std::get<RepresentationTable>(result))}});
  return kOk;
}

int cmd_extract(const Options& o) {
  auto a = io::instance_from_json(read_json(o.input));
  auto result = extract(a);
  if (auto* bad = std::get_if<NotSumFull>(&result)) {
    emit({{"format", io::kFormat}, {"sum_full", false}, {"index", bad->index}});
    return kNotSumFull;
  }
  const auto& cert = std::get<ZeroSumCertificate>(result);
  if (!verify_certificate(cert, a)) throw InternalError("certificate failed verification");
  emit(io::to_json(cert, a.spec()));
  return kOk;
}

int cmd_verify(const Options& o) {
  json instance_json, cert_json;
  if (o.certificate.empty()) {
    auto both = read_json(o.input);
    if (!both.contains("instance") || !both.contains("certificate")) {
      throw InputError("verify needs --certificate or an {\"instance\", \"certificate\"} document");
    }
    instance_json = both["instance"];
    cert_json = both["certificate"];
  } else {
    instance_json = read_json(o.input);
    cert_json = read_json(o.certificate);
  }
  auto a = io::instance_from_json(instance_json);
  bool valid = false;
  try {
    auto cert = io::certificate_from_json(cert_json);
    valid = io::group_from_json(cert_json.at("group")) == a.spec() && verify_certificate(cert, a);
  } catch (const InputError& e) {
    std::cerr << "certificate rejected: " << e.what() << '\n';
  }
  emit({{"format", io::kFormat}, {"valid", valid}});
  return valid ? kOk : kMalformed;
}

int cmd_matrix_witness(const Options& o) {
  auto j = read_json(o.input);
  auto m = validate_membership(io::matrix_from_json(io::detail::field(j, "matrix")));
  auto w = find_witness(m);
  if (!verify_witness(m, w)) throw InternalError("witness failed verification");
  emit(io::to_json(w));
  return kOk;
}

int cmd_oracle(const Options& o) {
  auto a = io::instance_from_json(read_json(o.input));
  SearchBudget budget;
  budget.max_n = o.max_n;
  budget.time_cap = o.budget;
  auto subset = brute_force_zero_sum(a, budget);
  json out = {{"format", io::kFormat}, {"zero_sum_free", !subset.has_value()}};
  out["subset"] = subset ? json(*subset) : json(nullptr);
  emit(out);
  return kOk;
}

int cmd_enumerate(const Options& o) {
  if (o.n == 0) throw InputError("enumerate needs --n");
  const std::size_t workers = std::max<std::size_t>(1, o.workers);
  std::vector<std::uint64_t> totals(workers, 0), failures(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](std::size_t shard) {
    try {
      totals[shard] = enumerate_class(
          o.n,
          [&](const ConstraintMatrix& m) {
            if (!o.verify_witness) return;
            bool ok = false;
            try {
              ok = verify_witness(m, find_witness(m));
            } catch (const InternalError&) {
            }
            if (!ok) ++failures[shard];
          },
          shard, workers, o.budget);
    } catch (...) {
      errors[shard] = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t s = 1; s < workers; ++s) threads.emplace_back(run, s);
  run(0);
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::uint64_t total = 0, failed = 0;
  for (std::size_t s = 0; s < workers; ++s) {
    total += totals[s];
    failed += failures[s];
  }
  json out = {{"format", io::kFormat}, {"n", o.n}, {"total", total}};
  if (o.verify_witness) out["failures"] = failed;
  emit(out);
  return failed == 0 ? kOk : kInternal;
}

int cmd_sidon(const Options& o) {
  auto a = io::instance_from_json(read_json(o.input));
  auto out = io::to_json(is_sidon(a.elements(), a.spec()));
  out["format"] = io::kFormat;
  emit(out);
  return kOk;
}

int cmd_quadruple(const Options& o) {
  auto j = read_json(o.input);
  auto a = io::instance_from_json(j);
  auto h = SubgroupHandle::trivial(a.spec());
  if (j.contains("subgroup")) {
    auto gens = io::elements_from_json(io::detail::field(j["subgroup"], "generators"), a.spec());
    h = subgroup_closure(gens, a.spec());
  }
  auto r = chain_extract(a, h);
  if (!verify_chain_outcome(r, a)) throw InternalError("chain outcome failed its invariant check");
  auto out = io::to_json(r);
  out["format"] = io::kFormat;
  emit(out);
  return kOk;
}

int cmd_olson(const Options& o) {
  auto j = read_json(o.input);
  auto g = io::group_from_json(io::detail::field(j, "group"));
  if (!g.is_finite() || g.torsion.empty()) throw InputError("olson needs a finite nontrivial p-group");
  // Each modulus must be a power of one common prime p.
  std::int64_t p = 0;
  std::vector<std::int64_t> exponents;
  for (auto m : g.torsion) {
    std::int64_t q = 2;
    while (m % q != 0) ++q;
    if (p == 0) p = q;
    if (q != p) throw InputError("moduli are not powers of a single prime");
    std::int64_t alpha = 0;
    while (m % p == 0) {
      m /= p;
      ++alpha;
    }
    if (m != 1) throw InputError("moduli are not powers of a single prime");
    exponents.push_back(alpha);
  }
  json out = {{"format", io::kFormat}, {"p", p}, {"exponents", exponents}, {"bound", olson_bound(p, exponents)}};
  const bool elementary = std::all_of(exponents.begin(), exponents.end(), [](auto e) { return e == 1; });
  if (elementary && g.order() <= 27) out["exhaustive"] = max_zero_sum_free_length(p, exponents.size());
  emit(out);
  return kOk;
}

int cmd_audit3(const Options& o) {
  auto a = io::instance_from_json(read_json(o.input));
  emit(io::to_json(audit_char3(a)));
  return kOk;
}

int cmd_gen(const Options& o) {
  if (o.mode == "random_matrix") {
    if (o.n == 0) throw InputError("random_matrix needs --n");
    emit({{"format", io::kFormat}, {"matrix", random_matrix(o.n, o.seed).to_rows()}});
    return kOk;
  }
  if (o.mode == "mixed") {
    emit(io::to_json(mixed_sumfull_instance(o.seed)));
    return kOk;
  }
  GenConfig cfg;
  cfg.seed = o.seed;
  cfg.bound = o.bound;
  cfg.group = GroupSpec::integers();
  if (o.input != "-") cfg.group = io::group_from_json(io::detail::field(read_json(o.input), "group"));
  if (o.n > 0) cfg.size = o.n;
  if (o.mode == "full_nonzero") {
    cfg.mode = GenMode::full_nonzero;
  } else if (o.mode != "prune_closure") {
    throw InputError("unknown mode " + o.mode);
  }
  auto set = random_sumfull_set(cfg);
  if (!set) {
    emit({{"format", io::kFormat}, {"group", io::to_json(cfg.group)}, {"elements", nullptr}});
    return kOk;
  }
  emit(io::to_json(*set));
  return kOk;
}

int cmd_fuzz(const Options& o) {
  const std::size_t count = o.n == 0 ? 100 : o.n;
  const std::size_t workers = std::max<std::size_t>(1, o.workers);
  std::vector<std::string> outputs(count);
  std::vector<json> reproducers(count);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](std::size_t shard) {
    try {
      for (std::size_t k = shard; k < count; k += workers) {
        const std::uint64_t seed = o.seed + k;
        auto a = mixed_sumfull_instance(seed);
        auto result = extract(a);
        const auto* cert = std::get_if<ZeroSumCertificate>(&result);
        if (cert && verify_certificate(*cert, a)) {
          outputs[k] = io::to_json(*cert, a.spec()).dump();
        } else {
          reproducers[k] = {{"seed", seed}, {"instance", io::to_json(a)}};
        }
      }
    } catch (...) {
      errors[shard] = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t s = 1; s < workers; ++s) threads.emplace_back(run, s);
  run(0);
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::uint64_t digest = io::kFnvOffset;
  json failures = json::array();
  for (std::size_t k = 0; k < count; ++k) {
    if (!reproducers[k].is_null()) failures.push_back(reproducers[k]);
    digest = io::fnv1a(outputs[k], digest);
  }
  emit({{"format", io::kFormat},
        {"seed", o.seed},
        {"instances", count},
        {"failures", failures},
        {"digest", io::hex(digest)}});
  return failures.empty() ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-sum subsets of sum-full sets in abelian groups"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) { sub->add_option("--input", o.input, "JSON input path, or - for stdin"); };
  auto add_common = [&](CLI::App* sub) {
    add_input(sub);
    sub->add_option("--seed", o.seed, "generator seed");
    sub->add_option("--n", o.n, "size parameter");
    sub->add_option("--budget", o.budget, "time cap in seconds");
    sub->add_option("--workers", o.workers, "worker threads");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"check", "decide sum-fullness and print the representation table", cmd_check},
      {"extract", "emit a verified zero-sum certificate", cmd_extract},
      {"verify", "check a certificate against an instance", cmd_verify},
      {"matrix-witness", "row set of an M_n matrix summing to a nonzero 0/1 vector", cmd_matrix_witness},
      {"oracle", "brute-force least zero-sum subset", cmd_oracle},
      {"enumerate", "stream every member of M_n", cmd_enumerate},
      {"sidon", "Sidon check with a violating quadruple", cmd_sidon},
      {"quadruple", "chain construction relative to a subgroup", cmd_quadruple},
      {"olson", "Olson bound for a p-group", cmd_olson},
      {"audit3", "step-by-step audit of the F_3 counting argument", cmd_audit3},
      {"gen", "generate an instance or matrix", cmd_gen},
      {"fuzz", "generate, extract and verify many instances", cmd_fuzz},
  };
  int (*selected)(const Options&) = nullptr;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    sub->callback([&selected, run = c.run] { selected = run; });
    const std::string name = c.name;
    if (name == "verify") sub->add_option("--certificate", o.certificate, "certificate JSON path");
    if (name == "oracle") sub->add_option("--max-n", o.max_n, "subset enumeration cap");
    if (name == "enumerate") sub->add_flag("--verify-witness", o.verify_witness, "run find_witness on every matrix");
    if (name == "gen") {
      sub->add_option("--mode", o.mode, "random_matrix | full_nonzero | prune_closure | mixed");
      sub->add_option("--bound", o.bound, "free coordinate bound for prune_closure");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::cerr << app.help();
      return kOk;
    }
    std::cerr << e.what() << '\n';
    return kMalformed;
  }

  try {
    return selected(o);
  } catch (const NotSumFullError& e) {
    std::cerr << e.what() << '\n';
    emit({{"format", io::kFormat}, {"sum_full", false}, {"index", e.index()}});
    return kNotSumFull;
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << '\n';
    return kBudget;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const InputError& e) {
    std::cerr << e.what() << '\n';
    return kMalformed;
  } catch (const json::exception& e) {
    std::cerr << e.what() << '\n';
    return kMalformed;
  }
}
