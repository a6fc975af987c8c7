#pragma once

// Concept counting and enumeration by Close-by-One with a canonicity test.
//
// Attributes are the branching dimension. A node (A, B, y) tries every
// attribute j >= y not in B, closes B + j, and keeps the result only if the
// closure adds no attribute below j. Failed closures are remembered per
// attribute and handed to the children, which skip j outright when the
// remembered intent already has an attribute below j they lack (the FCbO
// refinement).
//
// Parallelism: the tree is expanded serially to a fixed seed depth; subtree
// roots at that depth are placed in a queue and counted independently. The
// total is the concepts above the seed depth plus the per-seed counts, so the
// result does not depend on scheduling.

#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "satfca/bitset.hpp"
#include "satfca/context.hpp"
#include "satfca/errors.hpp"
#include "satfca/lattice.hpp"
#include "satfca/parallel.hpp"
#include "satfca/qstats.hpp"

namespace satfca {

struct Concept {
  Bitset extent;  // objects
  Bitset intent;  // attributes
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

/// Thrown when an enumeration sink fails; delivered() concepts were handed
/// over before the failure.
class EnumerationAborted : public Error {
 public:
  EnumerationAborted(const std::string& what, std::uint64_t delivered)
      : Error(what), delivered_(delivered) {}
  std::uint64_t delivered() const noexcept { return delivered_; }

 private:
  std::uint64_t delivered_;
};

struct CountOptions {
  unsigned workers = 1;  // 0: one per hardware thread
  unsigned seed_depth = 2;
  /// Resume from this file if it exists; progress is written back to it.
  std::optional<std::filesystem::path> checkpoint;
  std::chrono::milliseconds checkpoint_interval{std::chrono::seconds(30)};
  /// Stop once roughly this many concepts were visited in this run (0: no
  /// limit). Seeds still in progress at that point are discarded.
  std::uint64_t concept_limit = 0;
  /// Only process seeds with index in [first, last).
  std::size_t seed_first = 0;
  std::size_t seed_last = static_cast<std::size_t>(-1);
};

struct ConceptTally {
  /// Concepts above the seed depth plus every completed seed. Equals the
  /// concept count when `complete`.
  BigNat count = 0;
  std::chrono::milliseconds elapsed{0};
  unsigned workers = 1;
  bool complete = false;
  /// Concepts visited by this run, abandoned partial seeds included.
  std::uint64_t visited = 0;
  std::size_t seeds_total = 0;
  std::size_t seeds_done = 0;
  /// Per-seed counts of completed seeds (index, count).
  std::vector<std::pair<std::size_t, std::uint64_t>> seed_counts;
};

/// FNV-1a over dimensions and incidence; identifies a context in checkpoints.
inline std::uint64_t context_fingerprint(const FormalContext& C) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(C.objects());
  mix(C.attributes());
  for (std::size_t g = 0; g < C.objects(); ++g) {
    for (Word w : C.row(g).words()) mix(w);
  }
  return h;
}

namespace cbo {

// Word-array helpers; W > 0 is a compile-time word count, W == 0 uses the
// runtime count n.
template <std::size_t W>
struct Words {
  std::size_t n;
  constexpr std::size_t size() const noexcept {
    if constexpr (W > 0) {
      return W;
    } else {
      return n;
    }
  }
  void copy(Word* dst, const Word* src) const noexcept {
    for (std::size_t i = 0; i < size(); ++i) dst[i] = src[i];
  }
  void fill(Word* dst, Word v) const noexcept {
    for (std::size_t i = 0; i < size(); ++i) dst[i] = v;
  }
  void and_into(Word* dst, const Word* a, const Word* b) const noexcept {
    for (std::size_t i = 0; i < size(); ++i) dst[i] = a[i] & b[i];
  }
  bool subset(const Word* a, const Word* b) const noexcept {
    Word acc = 0;
    for (std::size_t i = 0; i < size(); ++i) acc |= a[i] & ~b[i];
    return acc == 0;
  }
  bool equal(const Word* a, const Word* b) const noexcept {
    Word acc = 0;
    for (std::size_t i = 0; i < size(); ++i) acc |= a[i] ^ b[i];
    return acc == 0;
  }
  std::size_t popcount(const Word* a) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
    return c;
  }
  /// a and b agree on bits [0, j).
  bool equal_below(const Word* a, const Word* b, std::size_t j) const noexcept {
    const std::size_t full = j / kWordBits;
    for (std::size_t i = 0; i < full; ++i) {
      if (a[i] != b[i]) return false;
    }
    const std::size_t rem = j % kWordBits;
    if (rem == 0) return true;
    const Word mask = (Word{1} << rem) - 1;
    return ((a[full] ^ b[full]) & mask) == 0;
  }
  /// a restricted to [0, j) is a subset of b.
  bool subset_below(const Word* a, const Word* b, std::size_t j) const noexcept {
    const std::size_t full = j / kWordBits;
    for (std::size_t i = 0; i < full; ++i) {
      if (a[i] & ~b[i]) return false;
    }
    const std::size_t rem = j % kWordBits;
    if (rem == 0) return true;
    const Word mask = (Word{1} << rem) - 1;
    return (a[full] & ~b[full] & mask) == 0;
  }
};

inline bool test_bit(const Word* a, std::size_t i) noexcept { return (a[i / kWordBits] >> (i % kWordBits)) & 1u; }
inline void set_bit(Word* a, std::size_t i) noexcept { a[i / kWordBits] |= Word{1} << (i % kWordBits); }

// Word counts are padded up to a specialised size (1, 2, 4, 8) when close;
// padding words stay zero.
inline std::size_t padded_words(std::size_t bits, std::size_t max_fixed) {
  const std::size_t w = std::max<std::size_t>(1, words_for(bits));
  const std::size_t up = std::bit_ceil(w);
  return up <= max_fixed ? up : w;
}

/// Packed copy of a context: columns as object sets, rows as attribute sets.
struct PackedContext {
  std::size_t objects = 0, attributes = 0;
  std::size_t ew = 0, iw = 0;  // words per extent / intent
  std::vector<Word> columns;   // attributes x ew
  std::vector<Word> rows;      // objects x iw
  std::vector<Word> all_attributes;

  explicit PackedContext(const FormalContext& C)
      : objects(C.objects()),
        attributes(C.attributes()),
        ew(padded_words(C.objects(), 8)),
        iw(padded_words(C.attributes(), 4)),
        columns(attributes * ew, 0),
        rows(objects * iw, 0),
        all_attributes(iw, 0) {
    for (std::size_t m = 0; m < attributes; ++m) set_bit(all_attributes.data(), m);
    for (std::size_t g = 0; g < objects; ++g) {
      C.row(g).for_each([&](std::size_t m) {
        set_bit(&rows[g * iw], m);
        set_bit(&columns[m * ew], g);
      });
    }
  }
  const Word* column(std::size_t m) const noexcept { return &columns[m * ew]; }
  const Word* row(std::size_t g) const noexcept { return &rows[g * iw]; }
};

/// Subtree root: concept (extent, intent), next attribute y, and the
/// inherited failed-closure table (attributes x iw words).
struct Seed {
  std::vector<Word> extent, intent, failed;
  std::size_t y = 0;
};

/// Visitor concept: bool visit(const Word* extent, const Word* intent);
/// returning false stops the search.
template <std::size_t EW, std::size_t IW, class Visitor>
class Search {
 public:
  Search(const PackedContext& ctx, Visitor& visitor)
      : ctx_(ctx), ext_{ctx.ew}, int_{ctx.iw}, visitor_(visitor), m_(ctx.attributes) {
    frames_.resize(m_ + 2);
  }

  /// Root concept (all objects, their common attributes).
  Seed root() const {
    Seed s;
    s.extent.assign(ctx_.ew, 0);
    for (std::size_t g = 0; g < ctx_.objects; ++g) set_bit(s.extent.data(), g);
    s.intent = ctx_.all_attributes;
    for (std::size_t g = 0; g < ctx_.objects; ++g) {
      for (std::size_t w = 0; w < ctx_.iw; ++w) s.intent[w] &= ctx_.row(g)[w];
    }
    s.failed.assign(m_ * ctx_.iw, 0);
    s.y = 0;
    return s;
  }

  /// Full subtree below (and including) the seed. False if stopped.
  bool run(const Seed& s) {
    max_depth_ = static_cast<std::size_t>(-1);
    return visit(0, s.extent.data(), s.intent.data(), s.y, s.failed.data());
  }

  /// Visits nodes above `depth` and collects the nodes at `depth` as seeds
  /// (without visiting them).
  bool expand(const Seed& s, std::size_t depth, std::vector<Seed>& seeds) {
    max_depth_ = depth;
    seeds_ = &seeds;
    if (depth == 0) {
      seeds.push_back(s);
      return true;
    }
    return visit(0, s.extent.data(), s.intent.data(), s.y, s.failed.data());
  }

 private:
  struct Frame {
    std::vector<Word> child_ext, child_int, failed;
    std::vector<std::size_t> child_j;
  };

  Frame& frame(std::size_t d) {
    Frame& f = frames_[d];
    if (f.child_j.empty() && m_ > 0) {
      f.child_ext.assign(m_ * ctx_.ew, 0);
      f.child_int.assign(m_ * ctx_.iw, 0);
      f.failed.assign(m_ * ctx_.iw, 0);
      f.child_j.assign(m_, 0);
    }
    return f;
  }

  // D = C' given D contains base (= B + j). Picks the cheaper of scanning
  // rows of C or testing columns outside base.
  void close(const Word* C, const Word* base, std::size_t base_count, Word* D) const {
    const std::size_t c_count = ext_.popcount(C);
    const std::size_t col_cost = (m_ - base_count) * ext_.size();
    const std::size_t row_cost = c_count * int_.size();
    if (row_cost <= col_cost) {
      int_.copy(D, ctx_.all_attributes.data());
      for (std::size_t w = 0; w < ext_.size(); ++w) {
        Word bits = C[w];
        while (bits) {
          const std::size_t g = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          const Word* r = ctx_.row(g);
          for (std::size_t i = 0; i < int_.size(); ++i) D[i] &= r[i];
          if (int_.equal(D, base)) return;
        }
      }
    } else {
      int_.copy(D, base);
      for (std::size_t k = 0; k < m_; ++k) {
        if (test_bit(base, k)) continue;
        if (ext_.subset(C, ctx_.column(k))) set_bit(D, k);
      }
    }
  }

  bool visit(std::size_t depth, const Word* A, const Word* B, std::size_t y, const Word* N) {
    if (depth == max_depth_) {
      Seed s;
      s.extent.assign(A, A + ctx_.ew);
      s.intent.assign(B, B + ctx_.iw);
      s.failed.assign(N, N + m_ * ctx_.iw);
      s.y = y;
      seeds_->push_back(std::move(s));
      return true;
    }
    if (!visitor_(A, B)) return false;
    if (y >= m_) return true;
    Frame& f = frame(depth);
    Word* M = f.failed.data();
    const std::size_t iw = int_.size();
    const std::size_t ew = ext_.size();
    const std::size_t b_count = int_.popcount(B);
    std::size_t children = 0;
    std::array<Word, (IW > 0 ? IW : 1)> fixed_base{};
    std::vector<Word> dyn_base;
    Word* base = fixed_base.data();
    if constexpr (IW == 0) {
      dyn_base.assign(iw, 0);
      base = dyn_base.data();
    }
    for (std::size_t j = y; j < m_; ++j) {
      int_.copy(M + j * iw, N + j * iw);
      if (test_bit(B, j)) continue;
      if (!int_.subset_below(N + j * iw, B, j)) continue;
      Word* C = f.child_ext.data() + children * ew;
      Word* D = f.child_int.data() + children * iw;
      ext_.and_into(C, A, ctx_.column(j));
      int_.copy(base, B);
      set_bit(base, j);
      close(C, base, b_count + 1, D);
      if (int_.equal_below(D, B, j)) {
        f.child_j[children++] = j;
      } else {
        int_.copy(M + j * iw, D);
      }
    }
    for (std::size_t c = 0; c < children; ++c) {
      if (!visit(depth + 1, f.child_ext.data() + c * ew, f.child_int.data() + c * iw,
                 f.child_j[c] + 1, M)) {
        return false;
      }
    }
    return true;
  }

  const PackedContext& ctx_;
  Words<EW> ext_;
  Words<IW> int_;
  Visitor& visitor_;
  std::size_t m_;
  std::vector<Frame> frames_;
  std::size_t max_depth_ = static_cast<std::size_t>(-1);
  std::vector<Seed>* seeds_ = nullptr;
};

// Picks the word-count specialisation for a context.
template <class F>
decltype(auto) dispatch(const PackedContext& ctx, F&& f) {
  auto with_iw = [&](auto ew_tag) -> decltype(auto) {
    constexpr std::size_t EW = decltype(ew_tag)::value;
    switch (ctx.iw) {
      case 1: return f(std::integral_constant<std::size_t, EW>{}, std::integral_constant<std::size_t, 1>{});
      case 2: return f(std::integral_constant<std::size_t, EW>{}, std::integral_constant<std::size_t, 2>{});
      case 4: return f(std::integral_constant<std::size_t, EW>{}, std::integral_constant<std::size_t, 4>{});
      default: return f(std::integral_constant<std::size_t, EW>{}, std::integral_constant<std::size_t, 0>{});
    }
  };
  switch (ctx.ew) {
    case 1: return with_iw(std::integral_constant<std::size_t, 1>{});
    case 2: return with_iw(std::integral_constant<std::size_t, 2>{});
    case 4: return with_iw(std::integral_constant<std::size_t, 4>{});
    case 8: return with_iw(std::integral_constant<std::size_t, 8>{});
    default: return with_iw(std::integral_constant<std::size_t, 0>{});
  }
}

// Counts concepts; every 4096 visits it publishes progress and checks the
// shared stop condition.
struct CountingVisitor {
  std::uint64_t local = 0;
  std::uint64_t unpublished = 0;
  std::atomic<std::uint64_t>* visited = nullptr;
  std::atomic<bool>* stop = nullptr;
  std::uint64_t limit = 0;

  bool operator()(const Word*, const Word*) {
    ++local;
    if (++unpublished == 4096) return publish();
    return true;
  }
  bool publish() {
    const std::uint64_t total = visited->fetch_add(unpublished) + unpublished;
    unpublished = 0;
    if (limit != 0 && total >= limit) stop->store(true, std::memory_order_relaxed);
    return !stop->load(std::memory_order_relaxed);
  }
};

// ---------------------------------------------------------------------------
// Checkpoints

struct CheckpointState {
  std::uint64_t fingerprint = 0;
  std::size_t objects = 0, attributes = 0;
  std::size_t seed_depth = 0;
  std::size_t seed_count = 0;
  BigNat prefix_count = 0;
  std::vector<std::pair<std::size_t, std::uint64_t>> done;
};

inline void write_checkpoint(const std::filesystem::path& path, const CheckpointState& s) {
  nlohmann::json j;
  j["format"] = "satfca-checkpoint";
  j["version"] = 1;
  std::ostringstream fp;
  fp << std::hex << s.fingerprint;
  j["fingerprint"] = fp.str();
  j["objects"] = s.objects;
  j["attributes"] = s.attributes;
  j["seed_depth"] = s.seed_depth;
  j["seed_count"] = s.seed_count;
  j["prefix_count"] = to_decimal(s.prefix_count);
  nlohmann::json done = nlohmann::json::array();
  for (const auto& [idx, count] : s.done) done.push_back({idx, std::to_string(count)});
  j["done"] = std::move(done);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint " + tmp.string());
    out << j.dump(1) << '\n';
    if (!out.flush()) throw IoError("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline CheckpointState read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  CheckpointState s;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("format").get<std::string>() != "satfca-checkpoint" || j.at("version").get<int>() != 1) {
      throw CheckpointError("checkpoint " + path.string() + ": unknown format or version");
    }
    s.fingerprint = std::stoull(j.at("fingerprint").get<std::string>(), nullptr, 16);
    s.objects = j.at("objects").get<std::size_t>();
    s.attributes = j.at("attributes").get<std::size_t>();
    s.seed_depth = j.at("seed_depth").get<std::size_t>();
    s.seed_count = j.at("seed_count").get<std::size_t>();
    s.prefix_count = BigNat(j.at("prefix_count").get<std::string>());
    for (const auto& d : j.at("done")) {
      const auto idx = d.at(0).get<std::size_t>();
      if (idx >= s.seed_count) throw CheckpointError("checkpoint seed index out of range");
      s.done.emplace_back(idx, std::stoull(d.at(1).get<std::string>()));
    }
  } catch (const CheckpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw CheckpointError("corrupt checkpoint " + path.string() + ": " + e.what());
  }
  return s;
}

template <std::size_t EW, std::size_t IW>
ConceptTally count_impl(const FormalContext& C, const PackedContext& ctx, const CountOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const unsigned workers = resolve_workers(opt.workers);
  std::atomic<std::uint64_t> visited{0};
  std::atomic<bool> stop{false};

  // Expand the top of the tree serially.
  std::optional<CheckpointState> resumed;
  std::size_t seed_depth = opt.seed_depth;
  const std::uint64_t fingerprint = context_fingerprint(C);
  if (opt.checkpoint && std::filesystem::exists(*opt.checkpoint)) {
    resumed = read_checkpoint(*opt.checkpoint);
    if (resumed->fingerprint != fingerprint || resumed->objects != C.objects() ||
        resumed->attributes != C.attributes()) {
      throw CheckpointError("checkpoint " + opt.checkpoint->string() + " belongs to a different context");
    }
    seed_depth = resumed->seed_depth;
  }
  CountingVisitor prefix_visitor{0, 0, &visited, &stop, 0};
  std::vector<Seed> seeds;
  {
    Search<EW, IW, CountingVisitor> search(ctx, prefix_visitor);
    search.expand(search.root(), seed_depth, seeds);
  }
  prefix_visitor.publish();
  const BigNat prefix = prefix_visitor.local;
  if (resumed && (resumed->seed_count != seeds.size() || resumed->prefix_count != prefix)) {
    throw CheckpointError("checkpoint " + opt.checkpoint->string() + " does not match the seed expansion");
  }

  std::vector<std::optional<std::uint64_t>> per_seed(seeds.size());
  if (resumed) {
    for (const auto& [idx, count] : resumed->done) per_seed[idx] = count;
  }

  std::mutex progress_mutex;
  auto last_write = std::chrono::steady_clock::now();
  auto snapshot = [&] {
    CheckpointState s;
    s.fingerprint = fingerprint;
    s.objects = C.objects();
    s.attributes = C.attributes();
    s.seed_depth = seed_depth;
    s.seed_count = seeds.size();
    s.prefix_count = prefix;
    for (std::size_t i = 0; i < per_seed.size(); ++i) {
      if (per_seed[i]) s.done.emplace_back(i, *per_seed[i]);
    }
    return s;
  };

  const std::size_t first = std::min(opt.seed_first, seeds.size());
  const std::size_t last = std::min(opt.seed_last, seeds.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = first; i < last; ++i) {
    if (!per_seed[i]) todo.push_back(i);
  }
  const std::uint64_t limit = opt.concept_limit;
  if (limit != 0 && visited.load() >= limit) stop = true;

  parallel_for(todo.size(), workers, [&](std::size_t t) {
    if (stop.load(std::memory_order_relaxed)) return;
    const std::size_t idx = todo[t];
    CountingVisitor v{0, 0, &visited, &stop, limit};
    Search<EW, IW, CountingVisitor> search(ctx, v);
    const bool finished = search.run(seeds[idx]);
    if (finished) v.publish();
    if (!finished) return;
    std::lock_guard lock(progress_mutex);
    per_seed[idx] = v.local;
    if (opt.checkpoint && std::chrono::steady_clock::now() - last_write >= opt.checkpoint_interval) {
      write_checkpoint(*opt.checkpoint, snapshot());
      last_write = std::chrono::steady_clock::now();
    }
  });

  ConceptTally tally;
  tally.workers = workers;
  tally.seeds_total = seeds.size();
  tally.count = prefix;
  for (std::size_t i = 0; i < per_seed.size(); ++i) {
    if (!per_seed[i]) continue;
    tally.count += *per_seed[i];
    ++tally.seeds_done;
    tally.seed_counts.emplace_back(i, *per_seed[i]);
  }
  tally.complete = tally.seeds_done == seeds.size();
  tally.visited = visited.load();
  if (opt.checkpoint) write_checkpoint(*opt.checkpoint, snapshot());
  tally.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return tally;
}

}  // namespace cbo

/// Exact number of formal concepts of C.
inline ConceptTally count_concepts(const FormalContext& C, const CountOptions& opt = {}) {
  const cbo::PackedContext ctx(C);
  return cbo::dispatch(ctx, [&](auto ew, auto iw) {
    return cbo::count_impl<decltype(ew)::value, decltype(iw)::value>(C, ctx, opt);
  });
}

using ConceptSink = std::function<bool(const Concept&)>;

/// Streams every concept to `sink` exactly once. With one worker the order is
/// deterministic; with more, sink calls are serialised but interleaved.
/// A sink returning false or throwing aborts with EnumerationAborted.
/// Returns the number of concepts delivered.
inline std::uint64_t enumerate_concepts(const FormalContext& C, const ConceptSink& sink, unsigned workers = 1,
                                        unsigned seed_depth = 2) {
  const cbo::PackedContext ctx(C);
  std::mutex sink_mutex;
  std::atomic<std::uint64_t> delivered{0};
  std::atomic<bool> failed{false};
  std::string failure;
  struct Emit {
    const cbo::PackedContext* ctx;
    const ConceptSink* sink;
    std::mutex* mutex;
    std::atomic<std::uint64_t>* delivered;
    std::atomic<bool>* failed;
    std::string* failure;
    bool operator()(const Word* A, const Word* B) {
      if (failed->load()) return false;
      Concept c{Bitset(ctx->objects), Bitset(ctx->attributes)};
      for (std::size_t g = 0; g < ctx->objects; ++g) {
        if (cbo::test_bit(A, g)) c.extent.set(g);
      }
      for (std::size_t m = 0; m < ctx->attributes; ++m) {
        if (cbo::test_bit(B, m)) c.intent.set(m);
      }
      std::lock_guard lock(*mutex);
      if (failed->load()) return false;
      bool ok = false;
      try {
        ok = (*sink)(c);
        if (!ok) *failure = "sink rejected a concept";
      } catch (const std::exception& e) {
        *failure = e.what();
      }
      if (!ok) {
        failed->store(true);
        return false;
      }
      ++*delivered;
      return true;
    }
  };
  Emit emit{&ctx, &sink, &sink_mutex, &delivered, &failed, &failure};
  std::vector<cbo::Seed> seeds;
  {
    cbo::Search<0, 0, Emit> search(ctx, emit);
    search.expand(search.root(), workers <= 1 ? 0 : seed_depth, seeds);
  }
  parallel_for(seeds.size(), workers, [&](std::size_t i) {
    if (failed.load()) return;
    Emit local = emit;
    cbo::Search<0, 0, Emit> search(ctx, local);
    search.run(seeds[i]);
  });
  if (failed.load()) {
    throw EnumerationAborted("enumeration aborted after " + std::to_string(delivered.load()) +
                                 " concepts: " + failure,
                             delivered.load());
  }
  return delivered.load();
}

/// All concepts, in single-worker enumeration order.
inline std::vector<Concept> list_concepts(const FormalContext& C, std::size_t max_size) {
  std::vector<Concept> out;
  try {
    enumerate_concepts(C, [&](const Concept& c) {
      if (out.size() == max_size) {
        throw CapExceededError("concept lattice exceeds " + std::to_string(max_size) + " concepts");
      }
      out.push_back(c);
      return true;
    });
  } catch (const EnumerationAborted& e) {
    throw CapExceededError(std::string(e.what()) + " (" + std::to_string(out.size()) + " collected so far)");
  }
  return out;
}

/// The concept lattice of C: concepts ordered by extent inclusion. Element i
/// is the i-th concept of list_concepts; labels are the intents as 0/1 strings.
inline FiniteLattice build_concept_lattice(const FormalContext& C, std::size_t max_size,
                                           std::vector<Concept>* concepts_out = nullptr) {
  std::vector<Concept> concepts = list_concepts(C, max_size);
  const std::size_t n = concepts.size();
  BitMatrix leq(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (concepts[i].extent.is_subset_of(concepts[j].extent)) leq.set(i, j);
    }
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& c : concepts) labels.push_back("[" + c.intent.to_string() + "]");
  auto L = FiniteLattice::from_order(std::move(leq), std::move(labels));
  if (concepts_out) *concepts_out = std::move(concepts);
  return L;
}

}  // namespace satfca
