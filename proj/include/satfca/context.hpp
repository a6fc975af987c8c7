#pragma once

// Formal contexts, the reduced contexts of Sat(L) and Tr(L), and the
// .cxt / FIMI / PBM file formats.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "satfca/bitset.hpp"
#include "satfca/errors.hpp"
#include "satfca/lattice.hpp"
#include "satfca/parallel.hpp"
#include "satfca/qstats.hpp"

namespace satfca {

/// What the rows and columns of a context encode.
enum class ContextKind {
  Generic,
  /// rows: covering pairs H->K; columns: elements X != bottom (stored as bottom->X)
  Saturated,
  /// rows and columns: non-identity comparable pairs
  Transfer,
};

/// Labelled objects x attributes incidence matrix.
class FormalContext {
 public:
  FormalContext() = default;
  FormalContext(BitMatrix incidence, std::vector<std::string> object_labels,
                std::vector<std::string> attribute_labels)
      : incidence_(std::move(incidence)),
        object_labels_(std::move(object_labels)),
        attribute_labels_(std::move(attribute_labels)) {
    if (object_labels_.size() != incidence_.rows() || attribute_labels_.size() != incidence_.cols()) {
      throw Error("context label count does not match the incidence matrix");
    }
    check_unique(object_labels_, "object");
    check_unique(attribute_labels_, "attribute");
  }

  /// Unlabelled context; labels are g<i> and m<j>.
  static FormalContext from_matrix(BitMatrix incidence) {
    std::vector<std::string> objs, attrs;
    for (std::size_t i = 0; i < incidence.rows(); ++i) objs.push_back("g" + std::to_string(i));
    for (std::size_t j = 0; j < incidence.cols(); ++j) attrs.push_back("m" + std::to_string(j));
    return FormalContext(std::move(incidence), std::move(objs), std::move(attrs));
  }

  std::size_t objects() const noexcept { return incidence_.rows(); }
  std::size_t attributes() const noexcept { return incidence_.cols(); }
  bool incident(std::size_t g, std::size_t m) const noexcept { return incidence_.test(g, m); }
  const BitMatrix& incidence() const noexcept { return incidence_; }
  const Bitset& row(std::size_t g) const noexcept { return incidence_.row(g); }

  const std::vector<std::string>& object_labels() const noexcept { return object_labels_; }
  const std::vector<std::string>& attribute_labels() const noexcept { return attribute_labels_; }

  ContextKind kind = ContextKind::Generic;
  /// Lattice data behind each row / column (empty for Generic contexts).
  std::vector<Arrow> object_arrows;
  std::vector<Arrow> attribute_arrows;

  /// Same relation with rows and columns permuted: new row i is old row
  /// row_perm[i], new column j is old column col_perm[j].
  FormalContext permuted(const std::vector<std::size_t>& row_perm,
                         const std::vector<std::size_t>& col_perm) const {
    BitMatrix m(objects(), attributes());
    std::vector<std::string> objs(objects()), attrs(attributes());
    for (std::size_t i = 0; i < objects(); ++i) {
      objs[i] = object_labels_[row_perm[i]];
      for (std::size_t j = 0; j < attributes(); ++j) {
        if (incident(row_perm[i], col_perm[j])) m.set(i, j);
      }
    }
    for (std::size_t j = 0; j < attributes(); ++j) attrs[j] = attribute_labels_[col_perm[j]];
    FormalContext out(std::move(m), std::move(objs), std::move(attrs));
    out.kind = kind;
    for (std::size_t i = 0; i < object_arrows.size(); ++i) out.object_arrows.push_back(object_arrows[row_perm[i]]);
    for (std::size_t j = 0; j < attribute_arrows.size(); ++j) {
      out.attribute_arrows.push_back(attribute_arrows[col_perm[j]]);
    }
    return out;
  }

 private:
  static void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) throw Error(std::string("duplicate ") + what + " label '" + l + "'");
    }
  }

  BitMatrix incidence_;
  std::vector<std::string> object_labels_;
  std::vector<std::string> attribute_labels_;
};

/// Elements other than bottom, ordered by (height, index).
inline std::vector<Element> nonbottom_by_height(const FiniteLattice& L) {
  std::vector<Element> xs;
  for (Element x = 0; x < L.size(); ++x) {
    if (x != L.bottom()) xs.push_back(x);
  }
  std::stable_sort(xs.begin(), xs.end(),
                   [&](Element a, Element b) { return L.height(a) < L.height(b); });
  return xs;
}

/// Reduced context of the lattice of saturated transfer systems on a modular
/// lattice: row H->K (covering pair) and column X != bottom are incident iff
/// X is not <= K or X <= H.
inline FormalContext sat_context(const FiniteLattice& L, unsigned workers = 1) {
  if (L.size() < 2) throw PreconditionError("sat_context needs a lattice with at least 2 elements");
  if (auto w = modular_witness(L)) {
    throw PreconditionError("sat_context requires a modular lattice; modular law fails at (" +
                            std::to_string(std::get<0>(*w)) + "," + std::to_string(std::get<1>(*w)) +
                            "," + std::to_string(std::get<2>(*w)) + ")");
  }
  const auto& covers = L.covers();
  const auto columns = nonbottom_by_height(L);
  BitMatrix m(covers.size(), columns.size());
  parallel_for(covers.size(), workers, [&](std::size_t r) {
    const Arrow hk = covers[r];
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Element x = columns[c];
      if (!L.leq(x, hk.target) || L.leq(x, hk.source)) m.set(r, c);
    }
  });
  std::vector<std::string> objs, attrs;
  for (const Arrow& a : covers) objs.push_back("cov:" + L.label(a.source) + ">" + L.label(a.target));
  for (Element x : columns) attrs.push_back("el:" + L.label(x));
  FormalContext ctx(std::move(m), std::move(objs), std::move(attrs));
  ctx.kind = ContextKind::Saturated;
  ctx.object_arrows = covers;
  for (Element x : columns) ctx.attribute_arrows.push_back({L.bottom(), x});
  return ctx;
}

/// Reduced context of the lattice of all transfer systems (trivial group
/// action): row a->b and column x->y are incident iff a is not >= x, or b is
/// not >= y, or a >= y.
inline FormalContext tr_context(const FiniteLattice& L, unsigned workers = 1) {
  if (L.size() < 2) throw PreconditionError("tr_context needs a lattice with at least 2 elements");
  const auto pairs = L.comparable_pairs(false);
  BitMatrix m(pairs.size(), pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t r) {
    const Arrow ab = pairs[r];
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const Arrow xy = pairs[c];
      if (!L.leq(xy.source, ab.source) || !L.leq(xy.target, ab.target) || L.leq(xy.target, ab.source)) {
        m.set(r, c);
      }
    }
  });
  std::vector<std::string> labels;
  for (const Arrow& a : pairs) labels.push_back("arr:" + L.label(a.source) + ">" + L.label(a.target));
  FormalContext ctx(std::move(m), labels, labels);
  ctx.kind = ContextKind::Transfer;
  ctx.object_arrows = pairs;
  ctx.attribute_arrows = pairs;
  return ctx;
}

namespace detail {

// Row r is an intersection of other rows iff the AND of all other rows that
// contain it equals it (the empty AND being the full row).
inline bool rows_reduced(const BitMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Bitset acc(m.cols(), true);
    for (std::size_t s = 0; s < m.rows(); ++s) {
      if (s != r && m.row(r).is_subset_of(m.row(s))) acc &= m.row(s);
    }
    if (acc == m.row(r)) return false;
  }
  return true;
}

}  // namespace detail

/// No row is the intersection of other rows, and likewise for columns.
inline bool is_reduced(const FormalContext& C) {
  return detail::rows_reduced(C.incidence()) && detail::rows_reduced(C.incidence().transposed());
}

/// Exact fraction of incident cells.
inline ExactRational density(const FormalContext& C) {
  if (C.objects() == 0 || C.attributes() == 0) {
    throw PreconditionError("density of an empty context is undefined");
  }
  return ExactRational(BigNat(C.incidence().count()),
                       BigNat(C.objects()) * BigNat(C.attributes()));
}

// ---------------------------------------------------------------------------
// File formats

enum class ContextFormat { Cxt, Fimi, Pbm };

inline ContextFormat parse_context_format(const std::string& s) {
  if (s == "cxt") return ContextFormat::Cxt;
  if (s == "fimi") return ContextFormat::Fimi;
  if (s == "pbm") return ContextFormat::Pbm;
  throw Error("unknown context format '" + s + "' (expected cxt, fimi or pbm)");
}

/// Burmeister format: B, blank, #objects, #attributes, blank, object names,
/// attribute names, then one row of '.'/'X' per object.
inline void write_cxt(std::ostream& out, const FormalContext& C) {
  out << "B\n\n" << C.objects() << '\n' << C.attributes() << "\n\n";
  for (const auto& l : C.object_labels()) out << l << '\n';
  for (const auto& l : C.attribute_labels()) out << l << '\n';
  std::string line(C.attributes(), '.');
  for (std::size_t g = 0; g < C.objects(); ++g) {
    for (std::size_t m = 0; m < C.attributes(); ++m) line[m] = C.incident(g, m) ? 'X' : '.';
    out << line << '\n';
  }
}

/// One line per object listing its incident attribute indices.
inline void write_fimi(std::ostream& out, const FormalContext& C) {
  for (std::size_t g = 0; g < C.objects(); ++g) {
    bool first = true;
    C.row(g).for_each([&](std::size_t m) {
      if (!first) out << ' ';
      out << m;
      first = false;
    });
    out << '\n';
  }
}

/// Plain PBM (P1): width = attributes, height = objects; a black pixel (1)
/// marks a 0 of the incidence matrix. Raster lines wrap at 70 pixels.
inline void write_pbm(std::ostream& out, const FormalContext& C) {
  out << "P1\n" << C.attributes() << ' ' << C.objects() << '\n';
  constexpr std::size_t kLine = 70;
  for (std::size_t g = 0; g < C.objects(); ++g) {
    std::string line;
    for (std::size_t m = 0; m < C.attributes(); ++m) {
      line.push_back(C.incident(g, m) ? '0' : '1');
      if (line.size() == kLine) {
        out << line << '\n';
        line.clear();
      }
    }
    if (!line.empty() || C.attributes() == 0) out << line << '\n';
  }
}

inline void write_context(std::ostream& out, const FormalContext& C, ContextFormat f) {
  switch (f) {
    case ContextFormat::Cxt: write_cxt(out, C); break;
    case ContextFormat::Fimi: write_fimi(out, C); break;
    case ContextFormat::Pbm: write_pbm(out, C); break;
  }
}

inline void export_context(const FormalContext& C, const std::filesystem::path& path, ContextFormat f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_context(out, C, f);
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

inline void export_cxt(const FormalContext& C, const std::filesystem::path& p) { export_context(C, p, ContextFormat::Cxt); }
inline void export_fimi(const FormalContext& C, const std::filesystem::path& p) { export_context(C, p, ContextFormat::Fimi); }
inline void export_pbm(const FormalContext& C, const std::filesystem::path& p) { export_context(C, p, ContextFormat::Pbm); }

inline FormalContext read_cxt(std::istream& in) {
  std::size_t lineno = 0;
  std::string line;
  auto next = [&](const char* what) -> std::string& {
    if (!std::getline(in, line)) throw ParseError(std::string("unexpected end of file, expected ") + what, lineno + 1);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };
  auto count = [&](const char* what) -> std::size_t {
    const std::string& s = next(what);
    std::size_t pos = 0;
    long long v = -1;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw ParseError(std::string("expected ") + what, lineno);
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (v < 0 || pos != s.size()) throw ParseError(std::string("expected ") + what, lineno);
    return static_cast<std::size_t>(v);
  };
  if (next("header 'B'") != "B") throw ParseError("malformed header: expected 'B'", lineno);
  next("context name line");
  const std::size_t objects = count("object count");
  const std::size_t attributes = count("attribute count");
  if (!next("blank line").empty()) throw ParseError("expected blank line after counts", lineno);
  std::vector<std::string> objs, attrs;
  for (std::size_t i = 0; i < objects; ++i) objs.push_back(next("object name"));
  for (std::size_t j = 0; j < attributes; ++j) attrs.push_back(next("attribute name"));
  BitMatrix m(objects, attributes);
  for (std::size_t g = 0; g < objects; ++g) {
    std::string row = next("incidence row");
    while (!row.empty() && std::isspace(static_cast<unsigned char>(row.back()))) row.pop_back();
    if (row.size() != attributes) {
      throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(attributes),
                       lineno);
    }
    for (std::size_t j = 0; j < attributes; ++j) {
      if (row[j] == 'X' || row[j] == 'x') {
        m.set(g, j);
      } else if (row[j] != '.') {
        throw ParseError(std::string("unexpected character '") + row[j] + "' in incidence row", lineno);
      }
    }
  }
  try {
    return FormalContext(std::move(m), std::move(objs), std::move(attrs));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), lineno);
  }
}

inline FormalContext import_cxt(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open context file " + path.string());
  return read_cxt(in);
}

}  // namespace satfca
