#include "soaxis/axis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "soaxis/error.hpp"
#include "text_util.hpp"

namespace soaxis {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Fixed start vector for power iteration. A constant vector is orthogonal to
// the dominant direction of a balanced two-cluster layout, so the start is a
// fixed pseudo-random vector instead (mt19937 output is fully specified).
std::vector<double> start_vector(std::size_t n) {
  std::mt19937 gen(0x50a715u);
  std::vector<double> v(n);
  for (auto& x : v) x = (static_cast<double>(gen()) + 0.5) / 4294967296.0 - 0.5;
  const double nv = norm(v);
  for (auto& x : v) x /= nv;
  return v;
}

void orthogonalize(std::vector<double>& v, const std::vector<EigenPair>& found) {
  for (const auto& p : found) {
    if (p.vector.empty()) continue;
    const double c = dot(v, p.vector);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * p.vector[i];
  }
}

void fix_sign(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (v[best] < 0)
    for (auto& x : v) x = -x;
}

}  // namespace

std::vector<EigenPair> top_eigenpairs(const Matrix& sym, std::size_t count, const PowerIterationOptions& opt) {
  const std::size_t n = sym.rows();
  if (n == 0 || sym.cols() != n) throw Error(ErrorKind::InvalidArgument, "matrix must be square and non-empty");
  Matrix a = sym;
  double trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
  if (!(trace > 0)) throw Error(ErrorKind::Degenerate, "matrix has no positive variance");

  std::vector<EigenPair> found;
  std::vector<double> w(n);
  for (std::size_t k = 0; k < std::min(count, n); ++k) {
    double remaining = 0;
    for (std::size_t i = 0; i < n; ++i) remaining += a(i, i);
    if (remaining <= 1e-12 * trace) {
      found.push_back({0.0, std::vector<double>(n, 0.0), 0});
      continue;
    }
    std::vector<double> v = start_vector(n);
    orthogonalize(v, found);
    double nv = norm(v);
    for (auto& x : v) x /= nv;

    bool converged = false;
    int it = 0;
    while (it < opt.max_iterations) {
      ++it;
      for (std::size_t r = 0; r < n; ++r) w[r] = dot(a.row(r), v);
      orthogonalize(w, found);
      const double nw = norm(w);
      if (nw == 0.0) break;  // start fell in the null space of what is left
      double diff = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double next = w[i] / nw;
        diff += (next - v[i]) * (next - v[i]);
        v[i] = next;
      }
      if (std::sqrt(diff) < opt.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      if (norm(w) == 0.0) {
        found.push_back({0.0, std::vector<double>(n, 0.0), it});
        continue;
      }
      throw Error(ErrorKind::Numerical, "power iteration for eigenvector " + std::to_string(k + 1) +
                                            " did not converge after " + std::to_string(it) + " iterations");
    }
    for (std::size_t r = 0; r < n; ++r) w[r] = dot(a.row(r), v);
    const double lambda = dot(v, w);
    fix_sign(v);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) -= lambda * v[r] * v[c];
    found.push_back({lambda, std::move(v), it});
  }
  return found;
}

DistanceMatrix build_distance_matrix(const PointWordSet& points, const EmbeddingTable& table) {
  DistanceMatrix dm;
  for (const auto& w : points.words) (table.contains(w) ? dm.words : dm.dropped).push_back(w);
  const std::size_t k = dm.words.size();
  if (k < 3)
    throw Error(ErrorKind::InsufficientData,
                "only " + std::to_string(k) + " point word(s) are in the embedding vocabulary, need at least 3");
  dm.d = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto vi = table.vector(dm.words[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dist = cosine_distance(vi, table.vector(dm.words[j]));
      dm.d(i, j) = dist;
      dm.d(j, i) = dist;
    }
  }
  return dm;
}

AxisProjection principal_axis(const DistanceMatrix& dm, const PowerIterationOptions& opt) {
  const std::size_t k = dm.words.size();
  if (k < 3 || dm.d.rows() != k || dm.d.cols() != k)
    throw Error(ErrorKind::InvalidArgument, "distance matrix must be K x K with K >= 3");

  Matrix centered(k, k);
  for (std::size_t c = 0; c < k; ++c) {
    double mean = 0;
    for (std::size_t r = 0; r < k; ++r) mean += dm.d(r, c);
    mean /= static_cast<double>(k);
    for (std::size_t r = 0; r < k; ++r) centered(r, c) = dm.d(r, c) - mean;
  }
  Matrix cov(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      double s = 0;
      for (std::size_t r = 0; r < k; ++r) s += centered(r, i) * centered(r, j);
      s /= static_cast<double>(k - 1);
      cov(i, j) = s;
      cov(j, i) = s;
    }
  double trace = 0;
  for (std::size_t i = 0; i < k; ++i) trace += cov(i, i);
  if (trace <= 1e-20) throw Error(ErrorKind::Degenerate, "all point words have the same distance profile");

  const auto pairs = top_eigenpairs(cov, 2, opt);
  AxisProjection proj;
  proj.words = dm.words;
  proj.axis1 = pairs[0].vector;
  proj.axis2 = pairs.size() > 1 ? pairs[1].vector : std::vector<double>(k, 0.0);
  proj.explained_variance = {pairs[0].value / trace, pairs.size() > 1 ? pairs[1].value / trace : 0.0};
  proj.pc1.resize(k);
  proj.pc2.resize(k);
  for (std::size_t r = 0; r < k; ++r) {
    proj.pc1[r] = dot(centered.row(r), proj.axis1);
    proj.pc2[r] = dot(centered.row(r), proj.axis2);
  }
  if (std::all_of(proj.pc1.begin(), proj.pc1.end(), [](double v) { return v == 0.0; }))
    throw Error(ErrorKind::Degenerate, "first principal component is identically zero");
  return proj;
}

Partition partition_by_origin(const AxisProjection& proj) {
  Partition p;
  for (std::size_t i = 0; i < proj.words.size(); ++i) (proj.pc1[i] >= 0.0 ? p.a : p.b).insert(proj.words[i]);
  if (p.a.empty() || p.b.empty())
    throw Error(ErrorKind::Partition, "principal axis puts all " + std::to_string(proj.words.size()) +
                                          " point words on one side of the origin");
  return p;
}

Partition partition_by_lexicon(const PointWordSet& points, const PolarityLexicon& lex) {
  Partition p;
  for (const auto& w : points.words) {
    auto s = lex.score(w);
    if (!s || *s == lex.neutral_threshold)
      p.dropped.push_back(w);
    else
      (*s > lex.neutral_threshold ? p.a : p.b).insert(w);
  }
  if (p.a.empty() || p.b.empty())
    throw Error(ErrorKind::Partition, "lexicon scores leave one side empty (" + std::to_string(p.a.size()) +
                                          " above, " + std::to_string(p.b.size()) + " below the neutral threshold)");
  return p;
}

namespace {

std::vector<double> mean_vector(const std::set<std::string>& words, const EmbeddingTable& table, const char* name) {
  std::vector<double> sum(table.dim(), 0.0);
  std::size_t n = 0;
  for (const auto& w : words) {
    auto idx = table.index_of(w);
    if (!idx) continue;
    auto r = table.row(*idx);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r[i];
    ++n;
  }
  if (n == 0) throw Error(ErrorKind::InsufficientData, std::string("set ") + name + " has no in-vocabulary word");
  for (auto& x : sum) x /= static_cast<double>(n);
  if (std::all_of(sum.begin(), sum.end(), [](double v) { return v == 0.0; }))
    throw Error(ErrorKind::DegenerateVector, std::string("mean vector of set ") + name + " is zero");
  return sum;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> build_reference_vectors(const std::set<std::string>& a,
                                                                            const std::set<std::string>& b,
                                                                            const EmbeddingTable& table) {
  return {mean_vector(a, table, "A"), mean_vector(b, table, "B")};
}

std::string_view to_string(AxisMode m) { return m == AxisMode::Unsupervised ? "unsupervised" : "semi-supervised"; }

SentimentAxis SentimentAxis::swapped() const {
  SentimentAxis s = *this;
  std::swap(s.pos_words, s.neg_words);
  std::swap(s.vec_pos, s.vec_neg);
  return s;
}

SentimentAxis orient_by_seed(const std::vector<double>& va, const std::vector<double>& vb, const EmbeddingTable& table,
                             const std::string& seed, const std::set<std::string>& a, const std::set<std::string>& b) {
  if (!table.contains(seed))
    throw Error(ErrorKind::SeedMissing, "seed word '" + seed + "' is not in the embedding vocabulary");
  const auto s = table.vector(seed);
  const double da = cosine_distance(va, s);
  const double db = cosine_distance(vb, s);
  if (std::abs(da - db) < 1e-12)
    throw Error(ErrorKind::OrientationAmbiguous, "both reference vectors are equally distant from '" + seed + "'");
  SentimentAxis axis;
  axis.seed = seed;
  if (da < db) {
    axis.vec_pos = va;
    axis.vec_neg = vb;
    axis.pos_words = a;
    axis.neg_words = b;
  } else {
    axis.vec_pos = vb;
    axis.vec_neg = va;
    axis.pos_words = b;
    axis.neg_words = a;
  }
  return axis;
}

double sentiment_orientation(std::span<const double> vec, const SentimentAxis& axis) {
  return cosine_similarity(axis.vec_pos, vec) - cosine_similarity(axis.vec_neg, vec);
}

double sentiment_orientation(std::string_view word, const SentimentAxis& axis, const EmbeddingTable& table) {
  return sentiment_orientation(table.vector(word), axis);
}

std::optional<double> OrientationLexicon::score(std::string_view word) const {
  auto it = scores.find(std::string(word));
  if (it == scores.end()) return std::nullopt;
  return it->second;
}

OrientationLexicon score_vocabulary(const SentimentAxis& axis, const EmbeddingTable& table) {
  OrientationLexicon lex;
  lex.axis = axis;
  lex.embedding_fingerprint = table.fingerprint();
  for (std::size_t i = 0; i < table.size(); ++i)
    lex.scores.emplace(table.words()[i], sentiment_orientation(table.row(i), axis));
  return lex;
}

double correlate_with_gold(const AxisProjection& proj, const PolarityLexicon& gold) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < proj.words.size(); ++i)
    if (auto s = gold.score(proj.words[i])) {
      x.push_back(proj.pc1[i]);
      y.push_back(*s);
    }
  if (x.size() < 2)
    throw Error(ErrorKind::InsufficientData, "fewer than 2 words shared between projection and gold lexicon");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorKind::UndefinedCorrelation, "zero variance in pc1 or gold scores");
  return std::min(1.0, std::abs(sxy / std::sqrt(sxx * syy)));
}

std::string format_axis(const SentimentAxis& axis) {
  std::string out = "[meta]\n";
  out += "mode\t" + std::string(to_string(axis.mode)) + "\n";
  out += "seed\t" + axis.seed + "\n";
  out += "dim\t" + std::to_string(axis.vec_pos.size()) + "\n";
  out += "[pos_words]\n";
  for (const auto& w : axis.pos_words) out += w + "\n";
  out += "[neg_words]\n";
  for (const auto& w : axis.neg_words) out += w + "\n";
  out += "[vectors]\n";
  for (const auto& [name, vec] : {std::pair{"vec_pos", &axis.vec_pos}, std::pair{"vec_neg", &axis.vec_neg}}) {
    out += name;
    for (double v : *vec) out += "\t" + detail::format_double(v);
    out += "\n";
  }
  return out;
}

SentimentAxis parse_axis(std::string_view text) {
  SentimentAxis axis;
  std::string section;
  std::size_t dim = 0;
  bool have_pos = false, have_neg = false;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    return Error(ErrorKind::Parse, "axis line " + std::to_string(lineno) + ": " + what);
  };
  for (auto line : detail::lines(text)) {
    ++lineno;
    if (detail::is_blank(line) || line.front() == '#') continue;
    if (line.front() == '[') {
      section = std::string(detail::trim(line));
      continue;
    }
    if (section == "[meta]") {
      auto f = detail::split(line, '\t');
      if (f.size() != 2) throw fail("expected key<TAB>value");
      if (f[0] == "mode") {
        if (f[1] == "unsupervised") axis.mode = AxisMode::Unsupervised;
        else if (f[1] == "semi-supervised") axis.mode = AxisMode::SemiSupervised;
        else throw fail("unknown mode '" + std::string(f[1]) + "'");
      } else if (f[0] == "seed") {
        axis.seed = std::string(f[1]);
      } else if (f[0] == "dim") {
        auto d = detail::parse_int<std::size_t>(f[1]);
        if (!d) throw fail("bad dim");
        dim = *d;
      }
    } else if (section == "[pos_words]") {
      axis.pos_words.insert(std::string(detail::trim(line)));
    } else if (section == "[neg_words]") {
      axis.neg_words.insert(std::string(detail::trim(line)));
    } else if (section == "[vectors]") {
      auto f = detail::split(line, '\t');
      std::vector<double> vec;
      for (std::size_t i = 1; i < f.size(); ++i) {
        auto v = detail::parse_double(f[i]);
        if (!v) throw fail("bad vector component");
        vec.push_back(*v);
      }
      if (f[0] == "vec_pos") {
        axis.vec_pos = std::move(vec);
        have_pos = true;
      } else if (f[0] == "vec_neg") {
        axis.vec_neg = std::move(vec);
        have_neg = true;
      } else {
        throw fail("unknown vector '" + std::string(f[0]) + "'");
      }
    } else {
      throw fail("content outside a section");
    }
  }
  if (!have_pos || !have_neg) throw Error(ErrorKind::Parse, "axis file lacks vec_pos or vec_neg");
  if (axis.vec_pos.size() != axis.vec_neg.size() || axis.vec_pos.empty() || (dim && dim != axis.vec_pos.size()))
    throw Error(ErrorKind::Parse, "axis reference vectors have inconsistent dimensions");
  return axis;
}

std::string format_orientation_lexicon(const OrientationLexicon& lex) {
  std::string out = "# embedding=" + lex.embedding_fingerprint + " mode=" + std::string(to_string(lex.axis.mode)) +
                    " seed=" + lex.axis.seed + "\n";
  for (const auto& [w, s] : lex.scores) out += w + "\t" + detail::format_double(s) + "\n";
  return out;
}

OrientationLexicon parse_orientation_lexicon(std::string_view text) {
  OrientationLexicon lex;
  std::size_t lineno = 0;
  for (auto line : detail::lines(text)) {
    ++lineno;
    if (detail::is_blank(line)) continue;
    if (line.front() == '#') {
      for (auto kv : detail::split_ws(line.substr(1))) {
        if (kv.starts_with("embedding=")) lex.embedding_fingerprint = std::string(kv.substr(10));
        else if (kv.starts_with("seed=")) lex.axis.seed = std::string(kv.substr(5));
        else if (kv == "mode=semi-supervised") lex.axis.mode = AxisMode::SemiSupervised;
      }
      continue;
    }
    auto f = detail::split(line, '\t');
    auto v = f.size() == 2 ? detail::parse_double(f[1]) : std::nullopt;
    if (!v || f[0].empty() || !std::isfinite(*v))
      throw Error(ErrorKind::Parse, "lexicon line " + std::to_string(lineno) + ": expected 'word<TAB>SO'");
    lex.scores[std::string(f[0])] = *v;
  }
  if (lex.scores.empty()) throw Error(ErrorKind::EmptyInput, "orientation lexicon is empty");
  return lex;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_projection_csv(const AxisProjection& proj) {
  std::string out = "word,pc1,pc2\n";
  for (std::size_t i = 0; i < proj.words.size(); ++i)
    out += csv_field(proj.words[i]) + "," + detail::format_double(proj.pc1[i]) + "," +
           detail::format_double(proj.pc2[i]) + "\n";
  return out;
}

}  // namespace soaxis
