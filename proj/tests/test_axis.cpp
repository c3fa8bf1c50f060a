#include <random>

#include "doctest.h"
#include "jacobi.hpp"
#include "pca_suite.hpp"
#include "support.hpp"

using namespace soaxis;

namespace {

std::vector<double> numbers(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  for (double x; in >> x;) out.push_back(x);
  return out;
}

PointWordSet points_of(std::initializer_list<const char*> words) {
  PointWordSet p;
  for (auto w : words) p.words.insert(w);
  return p;
}

// Two clusters around +e0 and -e0 plus noise, and a seed near +e0.
EmbeddingTable two_cluster_table(unsigned seed = 1) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.15);
  EmbeddingTable t(6);
  for (int i = 0; i < 6; ++i) {
    std::vector<double> p(6), n(6);
    for (int k = 0; k < 6; ++k) {
      p[k] = noise(rng);
      n[k] = noise(rng);
    }
    p[0] += 1.0;
    n[0] -= 1.0;
    p[1] += 0.3;
    n[1] += 0.3;
    t.add("p" + std::to_string(i), p);
    t.add("n" + std::to_string(i), n);
  }
  t.add("excellent", std::vector<double>{1.0, 0.2, 0.1, 0.0, 0.0, 0.0});
  t.add("dull", std::vector<double>{-1.0, 0.25, 0.0, 0.1, 0.0, 0.0});
  return t;
}

}  // namespace

TEST_CASE("distance matrix") {
  auto t = load_embeddings(test_data("dist3.vec"));
  auto dm = build_distance_matrix(points_of({"x", "y", "z", "missing"}), t);
  CHECK(dm.words == std::vector<std::string>{"x", "y", "z"});
  CHECK(dm.dropped == std::vector<std::string>{"missing"});
  auto rows = split_lines(slurp(expected("dist3.txt")));
  for (std::size_t i = 0; i < 3; ++i) {
    auto want = numbers(rows[i]);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::abs(dm.d(i, j) - want[j]) < 1e-9);
      CHECK(dm.d(i, j) == dm.d(j, i));
    }
    CHECK(dm.d(i, i) == 0.0);
  }

  EmbeddingTable same(2);
  same.add("a", std::vector<double>{1, 1});
  same.add("b", std::vector<double>{2, 2});
  same.add("c", std::vector<double>{1, -1});
  CHECK(build_distance_matrix(points_of({"a", "b", "c"}), same).d(0, 1) == doctest::Approx(0.0));
  CHECK_ERROR_KIND(build_distance_matrix(points_of({"a", "b", "zz"}), same), ErrorKind::InsufficientData);
}

TEST_CASE("power iteration against Jacobi on PSD matrices") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int f = 0; f < 30; ++f) {
    const std::size_t n = 2 + f % 7;
    std::vector<std::vector<double>> b(n, std::vector<double>(n));
    for (auto& row : b)
      for (auto& x : row) x = u(rng);
    Matrix m(n, n);
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) a[i][j] += b[i][k] * b[j][k];
        m(i, j) = a[i][j];
      }
    auto ref = oracle::jacobi(a);
    auto got = top_eigenpairs(m, 2);
    CHECK(got[0].value == doctest::Approx(ref.values[0]).epsilon(1e-8));
    CHECK(got[1].value == doctest::Approx(ref.values[1]).epsilon(1e-6));
    double same = 0, flip = 0;
    std::size_t big = 0;
    for (std::size_t i = 0; i < n; ++i) {
      same = std::max(same, std::abs(got[0].vector[i] - ref.vectors[0][i]));
      flip = std::max(flip, std::abs(got[0].vector[i] + ref.vectors[0][i]));
      if (std::abs(got[0].vector[i]) > std::abs(got[0].vector[big])) big = i;
    }
    CHECK(std::min(same, flip) < 1e-6);
    CHECK(got[0].vector[big] > 0);  // sign convention
  }
}

TEST_CASE("PCA oracle suite: 100 fixtures up to 8x8") {
  auto r = run_pca_suite();
  CHECK(r.fixtures == 100);
  CHECK(r.failures == 0);
  CHECK(r.worst < 1e-6);
  CHECK(r.seconds < 5.0);
}

TEST_CASE("principal axis: degenerate and rank-one inputs") {
  DistanceMatrix flat;
  flat.words = {"a", "b", "c"};
  flat.d = Matrix(3, 3, 0.5);
  CHECK_ERROR_KIND(principal_axis(flat), ErrorKind::Degenerate);

  // rows on a line: row i = t_i * r
  DistanceMatrix line;
  const std::vector<double> t{0.1, 0.4, 0.9, 1.3};
  const std::vector<double> r{1.0, 0.5, -0.3, 0.2};
  line.words = {"a", "b", "c", "d"};
  line.d = Matrix(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) line.d(i, j) = t[i] * r[j];
  auto p = principal_axis(line);
  CHECK(p.explained_variance.first == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.explained_variance.second == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("partition by origin") {
  AxisProjection p;
  p.words = {"w1", "w2"};
  p.pc1 = {0.5, -0.5};
  p.pc2 = {0, 0};
  auto part = partition_by_origin(p);
  CHECK(part.a == std::set<std::string>{"w1"});
  CHECK(part.b == std::set<std::string>{"w2"});
  p.pc1 = {0.0, -0.1};
  CHECK(partition_by_origin(p).a.count("w1"));
  p.pc1 = {0.2, 0.1};
  CHECK_ERROR_KIND(partition_by_origin(p), ErrorKind::Partition);
}

TEST_CASE("property: partition boundary matches the sign of pc1") {
  auto t = two_cluster_table();
  PointWordSet pts;
  for (const auto& w : t.words()) pts.words.insert(w);
  auto proj = principal_axis(build_distance_matrix(pts, t));
  auto part = partition_by_origin(proj);
  for (std::size_t i = 0; i < proj.words.size(); ++i)
    CHECK((proj.pc1[i] >= 0) == (part.a.count(proj.words[i]) == 1));
  CHECK(part.a.size() + part.b.size() == proj.words.size());
}

TEST_CASE("partition by lexicon") {
  PolarityLexicon lex;
  lex.entries = {{"good", 1.2}, {"bad", -0.8}, {"meh", 0.0}};
  auto part = partition_by_lexicon(points_of({"good", "bad", "meh", "unknown"}), lex);
  CHECK(part.a == std::set<std::string>{"good"});
  CHECK(part.b == std::set<std::string>{"bad"});
  CHECK(part.dropped == std::vector<std::string>{"meh", "unknown"});
  CHECK_ERROR_KIND(partition_by_lexicon(points_of({"good"}), lex), ErrorKind::Partition);

  lex.neutral_threshold = 1.0;
  CHECK(partition_by_lexicon(points_of({"good", "bad"}), lex).b == std::set<std::string>{"bad"});
}

TEST_CASE("40-word lexicon sign split") {
  auto lex = load_polarity_lexicon(test_data("lexicon40.tsv"));
  auto pts = parse_point_words(slurp(test_data("points40.tsv")));
  auto part = partition_by_lexicon(pts, lex);
  auto rows = split_lines(slurp(expected("lexicon40.split.txt")));
  auto set_of = [](const std::string& line) {
    std::set<std::string> s;
    std::istringstream in(line.substr(2));
    for (std::string w; in >> w;) s.insert(w);
    return s;
  };
  CHECK(part.a == set_of(rows[0]));
  CHECK(part.b == set_of(rows[1]));
  std::set<std::string> dropped(part.dropped.begin(), part.dropped.end());
  CHECK(dropped == set_of(rows[2]));
}

TEST_CASE("reference vectors") {
  EmbeddingTable t(2);
  t.add("x", std::vector<double>{1, 0});
  t.add("y", std::vector<double>{0, 1});
  t.add("z", std::vector<double>{-1, 0});
  auto [va, vb] = build_reference_vectors({"x", "y"}, {"y"}, t);
  CHECK(va == std::vector<double>{0.5, 0.5});
  CHECK(vb == std::vector<double>{0.0, 1.0});
  CHECK(build_reference_vectors({"x", "nope"}, {"y"}, t).first == std::vector<double>{1, 0});
  CHECK_ERROR_KIND(build_reference_vectors({"nope"}, {"y"}, t), ErrorKind::InsufficientData);
  CHECK_ERROR_KIND(build_reference_vectors({"x", "z"}, {"y"}, t), ErrorKind::DegenerateVector);

  auto m = load_embeddings(test_data("mean10.vec"));
  std::set<std::string> all(m.words().begin(), m.words().end());
  auto mean = build_reference_vectors(all, {"m0"}, m).first;
  auto want = numbers(slurp(expected("mean10.txt")));
  REQUIRE(want.size() == mean.size());
  for (std::size_t k = 0; k < mean.size(); ++k) CHECK(std::abs(mean[k] - want[k]) < 1e-12);
}

TEST_CASE("orientation by seed") {
  auto t = two_cluster_table();
  std::vector<double> s(t.vector("excellent").begin(), t.vector("excellent").end());
  std::vector<double> d(t.vector("dull").begin(), t.vector("dull").end());
  auto ax = orient_by_seed(s, d, t, "excellent");
  CHECK(ax.vec_pos == s);
  auto flipped = orient_by_seed(d, s, t, "excellent", {"b"}, {"a"});
  CHECK(flipped.vec_pos == s);
  CHECK(flipped.pos_words == std::set<std::string>{"a"});

  CHECK_ERROR_KIND(orient_by_seed(s, d, t, "absent"), ErrorKind::SeedMissing);
  // mirror images about the seed direction
  EmbeddingTable sym(2);
  sym.add("excellent", std::vector<double>{1, 0});
  CHECK_ERROR_KIND(orient_by_seed({1, 1}, {1, -1}, sym, "excellent"), ErrorKind::OrientationAmbiguous);
}

TEST_CASE("5-word orientation fixture") {
  auto t = load_embeddings(test_data("so5.vec"));
  auto refs = split_lines(slurp(test_data("so5.refs")));
  SentimentAxis ax;
  ax.vec_pos = numbers(refs[0].substr(4));
  ax.vec_neg = numbers(refs[1].substr(4));
  for (const auto& line : split_lines(slurp(expected("so5.txt")))) {
    auto f = split_on(line, '\t');
    CHECK(std::abs(sentiment_orientation(f[0], ax, t) - std::stod(f[1])) < 1e-9);
  }
  CHECK_ERROR_KIND(sentiment_orientation("nope", ax, t), ErrorKind::OutOfVocabulary);

  SentimentAxis eq;
  eq.vec_pos = {1, 0};
  eq.vec_neg = {0, 1};
  CHECK(sentiment_orientation(std::vector<double>{1, 1}, eq) == doctest::Approx(0.0));
  CHECK(sentiment_orientation(std::vector<double>{1, 0}, eq) == doctest::Approx(1.0));
}

TEST_CASE("property: antisymmetry, seed sign, scale invariance") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    auto t = two_cluster_table(seed);
    PointWordSet pts;
    for (const auto& w : t.words())
      if (w != "excellent") pts.words.insert(w);
    auto proj = principal_axis(build_distance_matrix(pts, t));
    auto part = partition_by_origin(proj);
    auto [va, vb] = build_reference_vectors(part.a, part.b, t);
    auto ax = orient_by_seed(va, vb, t, "excellent", part.a, part.b);
    CHECK(sentiment_orientation("excellent", ax, t) >= 0.0);
    CHECK(cosine_distance(ax.vec_pos, t.vector("excellent")) < cosine_distance(ax.vec_neg, t.vector("excellent")));
    auto lex = score_vocabulary(ax, t);
    CHECK(lex.size() == t.size());
    CHECK(*lex.score("excellent") >= 0.0);
    auto sw = ax.swapped();
    for (const auto& [w, so] : lex.scores) {
      CHECK(sentiment_orientation(w, sw, t) == -so);
      CHECK(so >= -2.0);
      CHECK(so <= 2.0);
    }

    // every SO unchanged when all vectors are scaled by c > 0
    for (double c : {0.001, 3.7, 1e4}) {
      auto ts = t.scaled(c);
      auto proj_s = principal_axis(build_distance_matrix(pts, ts));
      auto part_s = partition_by_origin(proj_s);
      CHECK(part_s.a == part.a);
      auto [sa, sb] = build_reference_vectors(part_s.a, part_s.b, ts);
      auto ax_s = orient_by_seed(sa, sb, ts, "excellent", part_s.a, part_s.b);
      CHECK(ax_s.pos_words == ax.pos_words);
      auto lex_s = score_vocabulary(ax_s, ts);
      for (const auto& [w, so] : lex.scores) CHECK(std::abs(*lex_s.score(w) - so) < 1e-9);
    }
  }
}

TEST_CASE("correlation with gold") {
  AxisProjection p;
  PolarityLexicon gold;
  for (const auto& line : split_lines(slurp(test_data("pearson20.tsv")))) {
    auto f = split_on(line, '\t');
    p.words.push_back(f[0]);
    p.pc1.push_back(std::stod(f[1]));
    p.pc2.push_back(0);
    gold.entries[f[0]] = std::stod(f[2]);
  }
  CHECK(std::abs(correlate_with_gold(p, gold) - std::stod(slurp(expected("pearson20.txt")))) < 1e-9);

  PolarityLexicon same, neg;
  for (std::size_t i = 0; i < p.words.size(); ++i) {
    same.entries[p.words[i]] = p.pc1[i];
    neg.entries[p.words[i]] = -p.pc1[i];
  }
  CHECK(correlate_with_gold(p, same) == doctest::Approx(1.0));
  CHECK(correlate_with_gold(p, neg) == doctest::Approx(1.0));

  PolarityLexicon flat;
  for (const auto& w : p.words) flat.entries[w] = 1.0;
  CHECK_ERROR_KIND(correlate_with_gold(p, flat), ErrorKind::UndefinedCorrelation);
  PolarityLexicon one;
  one.entries[p.words[0]] = 1.0;
  CHECK_ERROR_KIND(correlate_with_gold(p, one), ErrorKind::InsufficientData);
}

TEST_CASE("axis and lexicon exports round-trip") {
  auto t = two_cluster_table();
  auto [va, vb] = build_reference_vectors({"p0", "p1"}, {"n0", "n1"}, t);
  auto ax = orient_by_seed(va, vb, t, "excellent", {"p0", "p1"}, {"n0", "n1"});
  ax.mode = AxisMode::SemiSupervised;
  auto back = parse_axis(format_axis(ax));
  CHECK(back.pos_words == ax.pos_words);
  CHECK(back.neg_words == ax.neg_words);
  CHECK(back.vec_pos == ax.vec_pos);
  CHECK(back.vec_neg == ax.vec_neg);
  CHECK(back.mode == AxisMode::SemiSupervised);
  CHECK(back.seed == "excellent");

  auto lex = score_vocabulary(ax, t);
  auto lb = parse_orientation_lexicon(format_orientation_lexicon(lex));
  CHECK(lb.scores == lex.scores);
  CHECK(lb.embedding_fingerprint == t.fingerprint());
  CHECK(lb.axis.mode == AxisMode::SemiSupervised);

  AxisProjection p;
  p.words = {"a,b", "c"};
  p.pc1 = {0.5, -0.25};
  p.pc2 = {0, 1};
  CHECK(format_projection_csv(p) == "word,pc1,pc2\n\"a,b\",0.5,0\nc,-0.25,1\n");
}
