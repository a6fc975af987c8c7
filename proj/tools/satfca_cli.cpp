// satfca command-line tool: lattice -> context -> concept count, with oracle
// cross-checks, exact statistics and context export.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "satfca/satfca.hpp"

namespace {

using namespace satfca;
using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kUsage = 1, kPrecondition = 2, kMismatch = 3, kIo = 4 };

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::vector<std::string> lattice;
  std::string context_path;
  std::string kind = "sat";
  std::string format = "cxt";
  std::string out;
  unsigned workers = 0;
  std::size_t max_size = kDefaultSubspaceCap;
  std::size_t cap = 0;
  std::size_t max_concepts = 100000;
  std::string checkpoint;
  unsigned seed_depth = 2;
  std::uint64_t limit = 0;
  bool verify = false;
  bool no_verify = false;
  bool witnesses = false;
  std::string oracle;
  std::uint64_t n = 0, p = 0;
  unsigned digits = 12;
};

Json header(const std::string& command) {
  Json j;
  j["tool"] = "satfca";
  j["version"] = kVersion;
  j["command"] = command;
  return j;
}

std::uint64_t parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-') throw UsageError(what + " must be a non-negative integer, got '" + s + "'");
  return v;
}

FiniteLattice build_lattice(const RunConfig& cfg) {
  const auto& args = cfg.lattice;
  if (args.empty()) throw UsageError("missing --lattice");
  const std::string& name = args[0];
  auto arity = [&](std::size_t k) {
    if (args.size() != k + 1) {
      throw UsageError("--lattice " + name + " takes " + std::to_string(k) + " argument(s)");
    }
  };
  if (name == "subspace") {
    arity(2);
    return subspace_lattice(static_cast<std::uint32_t>(parse_number(args[1], "p")),
                            parse_number(args[2], "n"), cfg.max_size);
  }
  if (name == "chain") {
    arity(1);
    return chain(parse_number(args[1], "k"));
  }
  if (name == "diamond") {
    arity(1);
    return diamond(parse_number(args[1], "k"));
  }
  if (name == "pentagon") {
    arity(0);
    return pentagon();
  }
  if (name == "file") {
    arity(1);
    return load_lattice(args[1]);
  }
  throw UsageError("unknown lattice '" + name + "' (expected subspace p n | chain k | diamond k | pentagon | file path)");
}

FormalContext build_context(const FiniteLattice& L, const RunConfig& cfg) {
  if (cfg.kind == "sat") {
    if (!is_modular(L)) {
      const auto w = modular_witness(L);
      throw PreconditionError("the saturated context requires a modular lattice; modular law fails at x=" +
                              L.label(std::get<0>(*w)) + ", y=" + L.label(std::get<1>(*w)) +
                              ", z=" + L.label(std::get<2>(*w)));
    }
    return sat_context(L, cfg.workers);
  }
  if (cfg.kind == "tr") return tr_context(L, cfg.workers);
  throw UsageError("unknown --kind '" + cfg.kind + "' (expected sat or tr)");
}

void require_one_input(const RunConfig& cfg, bool allow_context) {
  const bool has_lattice = !cfg.lattice.empty();
  const bool has_context = !cfg.context_path.empty();
  if (has_lattice == has_context) {
    throw UsageError(allow_context ? "give exactly one of --lattice or --context" : "missing --lattice");
  }
}

std::string rational_string(const ExactRational& r) {
  return to_decimal(boost::multiprecision::numerator(r)) + "/" + to_decimal(boost::multiprecision::denominator(r));
}

// Truncated decimal expansion of a non-negative rational.
std::string decimal_string(const ExactRational& r, unsigned digits) {
  const BigNat num = boost::multiprecision::numerator(r);
  const BigNat den = boost::multiprecision::denominator(r);
  std::string s = to_decimal(num / den);
  if (digits == 0) return s;
  std::string frac = to_decimal((num % den) * qstats::power(10, digits) / den);
  return s + "." + std::string(digits - frac.size(), '0') + frac;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

// Writes through `out` or stdout.
template <class Writer>
void write_output(const std::string& path, Writer&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  write(out);
  if (!out.flush()) throw IoError("cannot write " + path);
}

int cmd_context(const RunConfig& cfg, ContextFormat format) {
  require_one_input(cfg, false);
  const FiniteLattice L = build_lattice(cfg);
  const FormalContext C = build_context(L, cfg);
  write_output(cfg.out, [&](std::ostream& os) { write_context(os, C, format); });
  Json j = header("context");
  j["kind"] = cfg.kind;
  j["objects"] = C.objects();
  j["attributes"] = C.attributes();
  j["density"] = rational_string(density(C));
  j["density_decimal"] = decimal_string(density(C), cfg.digits);
  j["reduced"] = is_reduced(C);
  // With the context on stdout the summary goes to stderr.
  if (cfg.out.empty() || cfg.out == "-") {
    std::cerr << j.dump(2) << '\n';
  } else {
    j["out"] = cfg.out;
    emit(j);
  }
  return kOk;
}

std::size_t oracle_size(const FiniteLattice& L, const std::string& kind) {
  return kind == "sat" ? L.covers().size() : L.comparable_pairs(false).size();
}

std::size_t oracle_cap(const std::string& kind, std::size_t requested) {
  if (requested) return requested;
  if (kind == "sat") return kSaturatedOracleCap;
  if (kind == "tr") return kTransferOracleCap;
  return kClosureOracleCap;
}

EnumerationReport run_oracle(const std::string& which, const std::optional<FiniteLattice>& L,
                             const std::optional<FormalContext>& C, const OracleOptions& opt) {
  if (which == "sat") return enumerate_saturated_brute(*L, opt);
  if (which == "tr") return enumerate_transfer_brute(*L, opt);
  return closure_count_oracle(*C, opt);
}

int cmd_count(const RunConfig& cfg) {
  require_one_input(cfg, true);
  if (cfg.verify && cfg.no_verify) throw UsageError("--verify and --no-verify are exclusive");
  std::optional<FiniteLattice> L;
  std::optional<FormalContext> C;
  std::string oracle_kind;
  if (!cfg.lattice.empty()) {
    L = build_lattice(cfg);
    C = build_context(*L, cfg);
    oracle_kind = cfg.kind;
  } else {
    C = import_cxt(cfg.context_path);
    oracle_kind = "closure";
  }

  CountOptions opt;
  opt.workers = cfg.workers;
  opt.seed_depth = cfg.seed_depth;
  opt.concept_limit = cfg.limit;
  if (!cfg.checkpoint.empty()) opt.checkpoint = cfg.checkpoint;
  const ConceptTally tally = count_concepts(*C, opt);

  Json j = header("count");
  j["count"] = to_decimal(tally.count);
  j["elapsed_ms"] = tally.elapsed.count();
  j["workers"] = tally.workers;
  j["complete"] = tally.complete;
  j["objects"] = C->objects();
  j["attributes"] = C->attributes();
  if (!tally.complete) {
    j["visited"] = tally.visited;
    j["seeds_done"] = tally.seeds_done;
    j["seeds_total"] = tally.seeds_total;
  }

  const std::size_t cap = oracle_cap(oracle_kind, cfg.cap);
  const std::size_t size = L ? oracle_size(*L, oracle_kind) : C->attributes();
  const bool within = size <= cap;
  const bool want = cfg.verify || (!cfg.no_verify && within);
  int code = kOk;
  if (want && !tally.complete) {
    j["verified"] = nullptr;
    j["verify_note"] = "count incomplete";
  } else if (want) {
    OracleOptions o;
    o.cap = cap;
    const EnumerationReport r = run_oracle(oracle_kind, L, C, o);
    const bool match = r.count == tally.count;
    j["verified"] = match;
    j["oracle"] = {{"method", r.method}, {"count", to_decimal(r.count)}};
    if (!match) code = kMismatch;
  } else {
    j["verified"] = nullptr;
  }
  emit(j);
  if (code == kMismatch) std::cerr << "error: concept count disagrees with the oracle\n";
  return code;
}

int cmd_enumerate(const RunConfig& cfg) {
  require_one_input(cfg, false);
  const FiniteLattice L = build_lattice(cfg);
  const FormalContext C = build_context(L, cfg);
  const std::vector<Concept> concepts = list_concepts(C, cfg.max_concepts);
  std::size_t bad = 0;
  write_output(cfg.out, [&](std::ostream& os) {
    std::size_t index = 0;
    for (const Concept& c : concepts) {
      ArrowSet T = ArrowSet::identities(L);
      if (cfg.kind == "sat") {
        SaturatedCover S{&L, {}};
        for (std::size_t g : c.extent.to_indices()) S.edges.push_back(C.object_arrows[g]);
        T = from_saturated_cover(S);
        if (!is_saturated(T)) ++bad;
      } else {
        for (std::size_t g : c.extent.to_indices()) T.insert(C.object_arrows[g]);
        if (!is_transfer_system(T)) ++bad;
      }
      os << "# system " << index++ << '\n';
      write_arrow_set(os, T);
      os << '\n';
    }
  });
  Json j = header("enumerate");
  j["kind"] = cfg.kind;
  j["systems"] = concepts.size();
  j["invalid"] = bad;
  std::cerr << j.dump(2) << '\n';
  return bad ? kMismatch : kOk;
}

int cmd_oracle(const RunConfig& cfg) {
  std::optional<FiniteLattice> L;
  std::optional<FormalContext> C;
  if (cfg.oracle == "closure") {
    require_one_input(cfg, true);
    if (!cfg.lattice.empty()) {
      L = build_lattice(cfg);
      C = build_context(*L, cfg);
    } else {
      C = import_cxt(cfg.context_path);
    }
  } else {
    require_one_input(cfg, false);
    L = build_lattice(cfg);
  }
  OracleOptions opt;
  opt.cap = cfg.cap;
  opt.collect_witnesses = cfg.witnesses;
  const EnumerationReport r = run_oracle(cfg.oracle, L, C, opt);
  Json j = header("oracle");
  j["oracle"] = cfg.oracle;
  j["method"] = r.method;
  j["count"] = to_decimal(r.count);
  if (cfg.witnesses) {
    Json w = Json::array();
    for (const ArrowSet& T : r.witnesses) {
      Json arrows = Json::array();
      for (const Arrow& a : T.arrows()) arrows.push_back({a.source, a.target});
      w.push_back(std::move(arrows));
    }
    j["witnesses"] = std::move(w);
  }
  emit(j);
  return kOk;
}

int cmd_stats(const RunConfig& cfg) {
  const auto n = cfg.n, p = cfg.p;
  Json j = header("stats");
  j["n"] = n;
  j["p"] = p;
  Json q = Json::array();
  for (std::uint64_t i = 0; i <= n; ++i) q.push_back(to_decimal(qstats::qbinom(n, i, p)));
  j["qbinoms"] = std::move(q);
  j["a"] = to_decimal(qstats::a(n, p));
  j["meet_irr"] = to_decimal(qstats::count_meet_irr(n, p));
  j["join_irr"] = to_decimal(qstats::count_join_irr(n, p));
  j["zeros"] = to_decimal(qstats::count_zeros(n, p));
  const ExactRational d = qstats::density_formula(n, p);
  j["density_num"] = to_decimal(boost::multiprecision::numerator(d));
  j["density_den"] = to_decimal(boost::multiprecision::denominator(d));
  j["density_decimal"] = decimal_string(d, cfg.digits);
  j["bounds_hold"] = qstats::check_bounds(n, p);
  emit(j);
  return kOk;
}

void add_lattice_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--lattice", cfg.lattice, "subspace p n | chain k | diamond k | pentagon | file path")
      ->expected(1, 3);
  sub->add_option("--kind", cfg.kind, "sat or tr")->check(CLI::IsMember({"sat", "tr"}));
  sub->add_option("--max-size", cfg.max_size, "largest subspace lattice to build");
}

void add_workers(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--workers", cfg.workers, "worker threads, 0 for one per hardware thread")
      ->envname("SATFCA_WORKERS");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Saturated transfer systems via formal concept analysis"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* context = app.add_subcommand("context", "Write the formal context of a lattice");
  add_lattice_options(context, cfg);
  add_workers(context, cfg);
  context->add_option("--format", cfg.format, "cxt, fimi or pbm")->check(CLI::IsMember({"cxt", "fimi", "pbm"}));
  context->add_option("--out", cfg.out, "output file (default stdout)");
  context->add_option("--digits", cfg.digits, "decimal digits of the density");

  auto* render = app.add_subcommand("render", "Write the context as a PBM bitmap");
  add_lattice_options(render, cfg);
  add_workers(render, cfg);
  render->add_option("--out", cfg.out, "output file (default stdout)");
  render->add_option("--digits", cfg.digits, "decimal digits of the density");

  auto* count = app.add_subcommand("count", "Count formal concepts");
  add_lattice_options(count, cfg);
  add_workers(count, cfg);
  count->add_option("--context", cfg.context_path, "Burmeister .cxt file");
  count->add_option("--checkpoint", cfg.checkpoint, "resume from and save progress to this file");
  count->add_option("--seed-depth", cfg.seed_depth, "depth of the serial expansion that feeds the workers");
  count->add_option("--limit", cfg.limit, "stop after about this many concepts");
  count->add_option("--cap", cfg.cap, "oracle cap used by verification");
  count->add_flag("--verify", cfg.verify, "cross-check with the applicable oracle");
  count->add_flag("--no-verify", cfg.no_verify, "skip the oracle cross-check");

  auto* enumerate = app.add_subcommand("enumerate", "List every (saturated) transfer system");
  add_lattice_options(enumerate, cfg);
  add_workers(enumerate, cfg);
  enumerate->add_option("--out", cfg.out, "output file (default stdout)");
  enumerate->add_option("--max", cfg.max_concepts, "refuse to list more systems than this");

  auto* oracle = app.add_subcommand("oracle", "Run a brute-force oracle");
  oracle->add_option("which", cfg.oracle, "sat, tr or closure")
      ->required()
      ->check(CLI::IsMember({"sat", "tr", "closure"}));
  add_lattice_options(oracle, cfg);
  oracle->add_option("--context", cfg.context_path, "Burmeister .cxt file (closure only)");
  oracle->add_option("--cap", cfg.cap, "problem size cap");
  oracle->add_flag("--witnesses", cfg.witnesses, "include every solution");

  auto* stats = app.add_subcommand("stats", "Exact subspace statistics");
  stats->add_option("--n", cfg.n, "dimension")->required();
  stats->add_option("--p", cfg.p, "prime")->required();
  stats->add_option("--digits", cfg.digits, "decimal digits of the density");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*context) return cmd_context(cfg, parse_context_format(cfg.format));
    if (*render) return cmd_context(cfg, ContextFormat::Pbm);
    if (*count) return cmd_count(cfg);
    if (*enumerate) return cmd_enumerate(cfg);
    if (*oracle) return cmd_oracle(cfg);
    if (*stats) return cmd_stats(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kUsage;
}
