#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "transum/errors.hpp"
#include "transum/topics.hpp"

using namespace transum;
using transum::testing::make_sentence;

namespace {

// 4-sentence corpus giving isf(u)=ln2, isf(v)=ln4, joint isf ln4
Vocabulary half_quarter_vocab() {
  std::vector<Sentence> sents = {
      make_sentence(1, {"u", "v"}),
      make_sentence(2, {"u"}),
      make_sentence(3, {"w"}),
      make_sentence(4, {"w"}),
  };
  return Vocabulary::build(sents);
}

}  // namespace

TEST_SUITE("joint_isf") {
  TEST_CASE("co-occur everywhere yields zero") {
    auto vocab = Vocabulary::build({make_sentence(1, {"a", "b"}), make_sentence(2, {"a", "b"})});
    auto j = joint_isf(vocab.index_of("a"), vocab.index_of("b"), vocab);
    REQUIRE(j.has_value());
    CHECK(*j == doctest::Approx(0.0));
  }

  TEST_CASE("single co-occurrence in four sentences") {
    auto vocab = half_quarter_vocab();
    auto j = joint_isf(vocab.index_of("u"), vocab.index_of("v"), vocab);
    REQUIRE(j.has_value());
    CHECK(*j == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  }

  TEST_CASE("never co-occur is incomparable") {
    auto vocab = half_quarter_vocab();
    CHECK_FALSE(joint_isf(vocab.index_of("u"), vocab.index_of("w"), vocab).has_value());
  }

  TEST_CASE("unknown term is an error") {
    auto vocab = half_quarter_vocab();
    CHECK_THROWS_AS(joint_isf(-1, 0, vocab), input_error);
    CHECK_THROWS_AS(joint_isf(0, vocab.size(), vocab), input_error);
  }
}

TEST_SUITE("semantic_dissimilarity") {
  TEST_CASE("always co-occurring terms are at distance zero") {
    auto vocab = Vocabulary::build({make_sentence(1, {"a", "b"}), make_sentence(2, {"a", "b"}),
                                    make_sentence(3, {"c"})});
    auto d = semantic_dissimilarity(vocab.index_of("a"), vocab.index_of("b"), vocab);
    REQUIRE(d.has_value());
    CHECK(*d == doctest::Approx(0.0));
  }

  TEST_CASE("hand value (ln4 - ln2) / ln4 = 0.5") {
    auto vocab = half_quarter_vocab();
    auto d = semantic_dissimilarity(vocab.index_of("u"), vocab.index_of("v"), vocab);
    REQUIRE(d.has_value());
    CHECK(*d == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("incomparable propagates") {
    auto vocab = half_quarter_vocab();
    CHECK_FALSE(semantic_dissimilarity(vocab.index_of("u"), vocab.index_of("w"), vocab).has_value());
  }

  TEST_CASE("both ubiquitous terms give zero") {
    auto vocab = Vocabulary::build({make_sentence(1, {"a", "b"}), make_sentence(2, {"a", "b"})});
    auto d = semantic_dissimilarity(vocab.index_of("a"), vocab.index_of("b"), vocab);
    REQUIRE(d.has_value());
    CHECK(*d == 0.0);
  }

  TEST_CASE("clamped to one when the ratio overshoots") {
    // u, v each in 12 of 100 sentences but together only once
    std::vector<Sentence> sents;
    int id = 0;
    sents.push_back(make_sentence(++id, {"u", "v"}));
    for (int i = 0; i < 11; ++i) sents.push_back(make_sentence(++id, {"u"}));
    for (int i = 0; i < 11; ++i) sents.push_back(make_sentence(++id, {"v"}));
    while (id < 100) sents.push_back(make_sentence(++id, {"x"}));
    auto vocab = Vocabulary::build(sents);
    auto d = semantic_dissimilarity(vocab.index_of("u"), vocab.index_of("v"), vocab);
    REQUIRE(d.has_value());
    CHECK(*d == 1.0);
  }

  TEST_CASE("symmetry and range on random corpora") {
    std::mt19937_64 rng(17);
    auto sents = transum::testing::random_token_corpus(rng, 40, 30);
    auto vocab = Vocabulary::build(sents);
    for (int u = 0; u < vocab.size(); ++u) {
      for (int v = u + 1; v < vocab.size(); ++v) {
        auto duv = semantic_dissimilarity(u, v, vocab);
        auto dvu = semantic_dissimilarity(v, u, vocab);
        CHECK(duv.has_value() == dvu.has_value());
        if (duv) {
          CHECK(*duv == doctest::Approx(*dvu).epsilon(1e-12));
          CHECK(*duv >= 0.0);
          CHECK(*duv <= 1.0);
        }
      }
    }
  }
}

namespace {

DissimilarityMatrix matrix_from(const std::vector<std::vector<double>>& rows) {
  DissimilarityMatrix m(static_cast<int>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j)
      if (rows[i][j] >= 0.0) m.set(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
  return m;
}

}  // namespace

TEST_SUITE("dbscan") {
  TEST_CASE("no neighborhoods means all noise") {
    auto m = matrix_from({{0, .95, .95}, {.95, 0, .95}, {.95, .95, 0}});
    auto res = dbscan(m, 0.9, 2);
    CHECK(res.cluster_count == 0);
    CHECK(res.labels == std::vector<int>{kNoise, kNoise, kNoise});
  }

  TEST_CASE("single tight cluster") {
    auto m = matrix_from({{0, .1, .1}, {.1, 0, .1}, {.1, .1, 0}});
    auto res = dbscan(m, 0.9, 3);
    CHECK(res.cluster_count == 1);
    CHECK(res.labels == std::vector<int>{1, 1, 1});
  }

  TEST_CASE("two separated cliques") {
    std::vector<std::vector<double>> rows(6, std::vector<double>(6, 1.0));
    for (int i = 0; i < 6; ++i) rows[i][i] = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) rows[i][j] = 0.1;
    for (int i = 3; i < 6; ++i)
      for (int j = 3; j < 6; ++j)
        if (i != j) rows[i][j] = 0.1;
    auto res = dbscan(matrix_from(rows), 0.5, 3);
    CHECK(res.cluster_count == 2);
    CHECK(res.labels == std::vector<int>{1, 1, 1, 2, 2, 2});
  }

  TEST_CASE("incomparable counts as out of radius") {
    DissimilarityMatrix m(3);  // all off-diagonal incomparable
    auto res = dbscan(m, 100.0, 2);
    CHECK(res.cluster_count == 0);
  }

  TEST_CASE("noise point becomes border of a later cluster") {
    // point 0 is within eps of the core 1..3 but has a sparse neighborhood
    auto m = matrix_from({{0, .4, 1, 1},
                          {.4, 0, .1, .1},
                          {1, .1, 0, .1},
                          {1, .1, .1, 0}});
    auto res = dbscan(m, 0.5, 3);
    CHECK(res.cluster_count == 1);
    CHECK(res.labels == std::vector<int>{1, 1, 1, 1});
  }

  TEST_CASE("reconstruction: members are density-reachable from cluster cores") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
      int n = transum::testing::rnd_int(rng, 2, 50);
      DissimilarityMatrix m(n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng() % 100 < 80)
            m.set(i, j, static_cast<double>(rng() % 1000) / 1000.0);
      double eps = 0.25 + static_cast<double>(rng() % 500) / 1000.0;
      int min_pts = transum::testing::rnd_int(rng, 1, 4);
      auto res = dbscan(m, eps, min_pts);

      auto neighborhood_size = [&](int p) {
        int c = 0;
        for (int q = 0; q < n; ++q)
          if (m(p, q) <= eps) ++c;
        return c;
      };
      // BFS from the core points of each cluster must reach every member
      for (int k = 1; k <= res.cluster_count; ++k) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
          if (res.labels[i] == k) members.push_back(i);
        REQUIRE(!members.empty());
        std::set<int> reached;
        std::vector<int> queue;
        for (int i : members)
          if (neighborhood_size(i) >= min_pts && reached.insert(i).second) queue.push_back(i);
        CHECK(!queue.empty());  // a cluster always holds a core point
        while (!queue.empty()) {
          int p = queue.back();
          queue.pop_back();
          for (int q : members) {
            if (reached.count(q) || m(p, q) > eps) continue;
            reached.insert(q);
            if (neighborhood_size(q) >= min_pts) queue.push_back(q);
          }
        }
        CHECK(reached.size() == members.size());
      }
    }
  }
}

TEST_SUITE("semcot") {
  TEST_CASE("single small cluster terminates on the first pass") {
    std::vector<Sentence> sents = {make_sentence(1, {"a", "b", "c"}),
                                   make_sentence(2, {"a", "b", "c"}),
                                   make_sentence(3, {"x"})};
    auto vocab = Vocabulary::build(sents);
    auto d = DissimilarityMatrix::build(vocab);
    SemcotParams p;
    p.max_cluster_size = 10;
    p.mu = 100.0;  // no rescues
    auto res = semcot(d, vocab, p);
    CHECK(res.clustered_count == 1);
    CHECK(res.labels[vocab.index_of("a")] == 1);
    CHECK(res.labels[vocab.index_of("b")] == 1);
    CHECK(res.labels[vocab.index_of("c")] == 1);
    CHECK(res.labels[vocab.index_of("x")] == kNoise);
  }

  TEST_CASE("oversized cluster dissolves under the shrinking radius") {
    // 20 terms pairwise at 0.1; every term alone in one extra sentence so
    // isf is positive and the rescue path has material to work with
    const int n = 20;
    DissimilarityMatrix d(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) d.set(i, j, 0.1);
    std::vector<Sentence> sents;
    int id = 0;
    for (int i = 0; i < n; ++i)
      sents.push_back(make_sentence(++id, {"t" + std::to_string(i)}));
    for (int k = 0; k < 20; ++k) sents.push_back(make_sentence(++id, {"filler"}));
    auto vocab = Vocabulary::build(sents);

    SemcotParams p;
    p.max_cluster_size = 10;
    auto res = semcot(d, vocab, p);
    auto groups = res.members();
    for (size_t g = 0; g < groups.size(); ++g) {
      bool rescued = static_cast<int>(g) + 1 > res.clustered_count;
      if (rescued)
        CHECK(groups[g].size() == 1);
      else
        CHECK(static_cast<int>(groups[g].size()) < 10);
    }
  }

  TEST_CASE("rescue threshold is sharp") {
    // t0 in 1 of 8 sentences: isf = ln 8 >= 1.98; t1 in 2 of 8: below
    std::vector<Sentence> sents;
    sents.push_back(make_sentence(1, {"t0", "x"}));
    sents.push_back(make_sentence(2, {"t1"}));
    sents.push_back(make_sentence(3, {"t1"}));
    for (int id = 4; id <= 8; ++id) sents.push_back(make_sentence(id, {"x"}));
    auto vocab = Vocabulary::build(sents);
    DissimilarityMatrix d(vocab.size());  // nothing clusters
    auto res = semcot(d, vocab, SemcotParams{});
    CHECK(vocab.isf(vocab.index_of("t0")) >= 1.98);
    CHECK(vocab.isf(vocab.index_of("t1")) < 1.98);
    CHECK(res.labels[vocab.index_of("t0")] != kNoise);
    CHECK(res.labels[vocab.index_of("t1")] == kNoise);
    CHECK(res.clustered_count == 0);
  }

  TEST_CASE("rescued topics are numbered after clustered ones, ascending") {
    std::vector<Sentence> sents = {make_sentence(1, {"a", "b", "c"}),
                                   make_sentence(2, {"a", "b", "c"}),
                                   make_sentence(3, {"r1"}), make_sentence(4, {"r2"}),
                                   make_sentence(5, {"x", "r2"}), make_sentence(6, {"x"}),
                                   make_sentence(7, {"x"}), make_sentence(8, {"x"})};
    auto vocab = Vocabulary::build(sents);
    auto d = DissimilarityMatrix::build(vocab);
    SemcotParams params;
    params.max_cluster_size = 10;  // tiny vocabulary; the 0.1*N_t default is degenerate here
    auto res = semcot(d, vocab, params);
    // r1 (isf ln8) rescued; r2 (isf ln4 < mu) not
    int r1 = vocab.index_of("r1");
    CHECK(res.labels[r1] == res.topic_count);
    CHECK(res.labels[vocab.index_of("r2")] == kNoise);
    CHECK(res.topic_count == res.clustered_count + 1);
  }

  TEST_CASE("iteration guard trips on an inseparable clique") {
    std::vector<Sentence> sents;
    std::vector<std::string> all;
    for (int i = 0; i < 20; ++i) all.push_back("t" + std::to_string(i));
    sents.push_back(make_sentence(1, all));
    sents.push_back(make_sentence(2, {"x"}));
    auto vocab = Vocabulary::build(sents);
    DissimilarityMatrix d(vocab.size());
    for (int i = 0; i < 20; ++i)
      for (int j = i + 1; j < 20; ++j) d.set(i, j, 0.0);  // never separable
    SemcotParams p;
    p.max_cluster_size = 5;
    p.max_iterations = 10;
    CHECK_THROWS_AS(semcot(d, vocab, p), internal_error);
  }

  TEST_CASE("deterministic and postconditions on random corpora") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
      auto sents = transum::testing::random_token_corpus(rng, 120, 50);
      auto vocab = Vocabulary::build(sents);
      auto d = DissimilarityMatrix::build(vocab);
      SemcotParams p;
      auto a = semcot(d, vocab, p);
      auto b = semcot(d, vocab, p);
      CHECK(a.labels == b.labels);
      CHECK(a.topic_count == b.topic_count);
      int max_size = p.resolve_max_cluster_size(vocab.size());
      auto groups = a.members();
      for (size_t g = 0; g < groups.size(); ++g) {
        CHECK(!groups[g].empty());
        if (static_cast<int>(g) + 1 <= a.clustered_count) {
          CHECK(static_cast<int>(groups[g].size()) < max_size);
        } else {
          REQUIRE(groups[g].size() == 1);
          CHECK(vocab.isf(groups[g][0]) >= p.mu);
        }
      }
      // rescue rule, both directions
      for (int t = 0; t < vocab.size(); ++t) {
        if (a.labels[t] > a.clustered_count) CHECK(vocab.isf(t) >= p.mu);
        if (a.labels[t] == kNoise) CHECK(vocab.isf(t) < p.mu);
      }
    }
  }

  TEST_CASE("parameter validation") {
    auto vocab = Vocabulary::build({make_sentence(1, {"a"}), make_sentence(2, {"b"})});
    DissimilarityMatrix d(vocab.size());
    SemcotParams p;
    p.beta = 1.0;
    CHECK_THROWS_AS(semcot(d, vocab, p), input_error);
    p = SemcotParams{};
    p.epsilon0 = 0.0;
    CHECK_THROWS_AS(semcot(d, vocab, p), input_error);
  }
}

TEST_CASE("topics debug dump") {
  auto vocab = Vocabulary::build({make_sentence(1, {"a", "b"}), make_sentence(2, {"a", "b"}),
                                  make_sentence(3, {"x"})});
  TopicAssignment t;
  t.topic_count = 1;
  t.clustered_count = 1;
  t.labels = {1, 1, kNoise};
  CHECK(topics_to_json(t, vocab) == "{\"1\":[\"a\",\"b\"]}");
}
