#include "figrl/common.hpp"
#include "figrl/graph.hpp"
#include "figrl/rng.hpp"
#include "figrl/sketch.hpp"

#include "testutil.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace figrl;

TEST_CASE("sketch size formula") {
    CHECK(sketch_size(34, ApproxParams{0.1, 2}) == 1411);
    CHECK(sketch_size(3, ApproxParams{0.5, 100}) == 400);    // k-term dominates
    CHECK(sketch_size(317080, ApproxParams{0.1, 200}) == 20000);
    CHECK_THROWS_AS(sketch_size(1, ApproxParams{0.1, 2}), ValidationError);
    CHECK_THROWS_AS(sketch_size(34, ApproxParams{0.0, 2}), ValidationError);
    CHECK_THROWS_AS(sketch_size(34, ApproxParams{1.0, 2}), ValidationError);
    CHECK_THROWS_AS(sketch_size(34, ApproxParams{0.1, 0}), ValidationError);
}

TEST_CASE("projection columns are deterministic and independent") {
    const ProjectionSpec spec{77, 64, 10};
    const auto a = projection_column(spec, 3);
    const auto b = projection_column(spec, 3);
    CHECK(a == b);
    CHECK(a != projection_column(spec, 4));
    CHECK(a != projection_column(ProjectionSpec{78, 64, 10}, 3));
    CHECK(a.size() == 64);
    CHECK_THROWS_AS(projection_column(spec, 10), ValidationError); // j out of range

    std::vector<double> buf(63);
    CHECK_THROWS_AS(projection_column(spec, 0, buf), ValidationError); // wrong length
}

TEST_CASE("sketch equals dense projection") {
    const Graph g = testutil::dolphins_like().graph;
    const DegreeVector deg = degree_vector(g);
    const std::size_t n = g.n(), d = 97;
    const ProjectionSpec spec{5, d, n};
    const Sketch sk = build_sketch(g, deg, spec);
    REQUIRE(sk.n() == n);
    REQUIRE(sk.d() == d);
    CHECK(sk.source_checksum == g.checksum());

    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (NodeId i = 0; i < n; ++i)
        for (const auto& [j, v] : walk_matrix_row(g, deg, i)) l(i, j) = v;
    Eigen::MatrixXd r(d, n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto col = projection_column(spec, j);
        for (std::size_t t = 0; t < d; ++t) r(t, j) = col[t];
    }
    const Eigen::MatrixXd expect = l * r.transpose() / std::sqrt(static_cast<double>(d));
    CHECK((sk.m - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("build_sketch validation") {
    const Graph g = testutil::two_triangles();
    const DegreeVector deg = degree_vector(g);
    CHECK_THROWS_AS(build_sketch(g, deg, ProjectionSpec{1, 0, g.n()}), ValidationError);
    CHECK_THROWS_AS(build_sketch(g, deg, ProjectionSpec{1, 16, g.n() + 1}), ValidationError);
}

TEST_CASE("oracle spectrum of a connected graph") {
    const Graph g = Graph::load_edge_list_file(std::string(FIGRL_DATA_DIR) + "/karate.edges");
    const WalkMatrixOracle oracle(g);
    // the walk matrix of a connected graph has top singular value exactly 1
    CHECK(oracle.singular_value(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(oracle.singular_value(1) < 1.0);
    for (int i = 1; i < 34; ++i)
        CHECK(oracle.singular_value(i - 1) >= oracle.singular_value(i));

    // residual is monotone in k and reaches ~0 at full rank
    double prev = oracle.rank_residual(1);
    for (int k = 2; k <= 34; ++k) {
        const double cur = oracle.rank_residual(k);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
    CHECK(oracle.rank_residual(34) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("oracle costs on its own basis") {
    const Graph g = testutil::dolphins_like().graph;
    const WalkMatrixOracle oracle(g);
    const int k = 3;
    const Eigen::MatrixXd u = oracle.top_left_singular_vectors(k);
    // the optimal basis achieves the rank-k residual exactly
    CHECK(oracle.projection_cost(u) == doctest::Approx(oracle.rank_residual(k)).epsilon(1e-9));
    CHECK(oracle.relative_cost(u) == doctest::Approx(0.0).epsilon(1e-7));

    Eigen::MatrixXd skew = u;
    skew.col(0) *= 2.0; // not orthonormal
    CHECK_THROWS_AS(oracle.projection_cost(skew), ValidationError);
}

TEST_CASE("sketch preserves projection cost within the stated band") {
    // small graph, generous d: the sandwich of the preservation definition
    // should hold for a sample of projections with eps=0.5 headroom
    const Graph g = testutil::two_triangles();
    const DegreeVector deg = degree_vector(g);
    const WalkMatrixOracle oracle(g);
    const Sketch sk = build_sketch(g, deg, ProjectionSpec{3, 256, g.n()});

    const Eigen::MatrixXd l = oracle.matrix();
    for (int pick = 0; pick < 6; ++pick) {
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(6, 2);
        for (int i = 0; i < 6; ++i) {
            if (i <= pick)
                x(i, 0) = 1.0;
            else
                x(i, 1) = 1.0;
        }
        x.col(0) /= x.col(0).norm();
        if (x.col(1).norm() > 0) x.col(1) /= x.col(1).norm();
        const Eigen::MatrixXd p = x * x.transpose();
        const double orig = (l - p * l).squaredNorm();
        const double skd = (sk.m - p * sk.m).squaredNorm();
        // both use ||.||_F^2; c is free, so compare up to a one-sided band
        CHECK(skd <= (1.5) * orig + 1e-9);
        CHECK(skd >= (0.5) * orig - 1e-9);
    }
}

TEST_CASE("relative_projection_cost wrapper agrees with the oracle") {
    const Graph g = testutil::two_triangles();
    const WalkMatrixOracle oracle(g);
    const Eigen::MatrixXd u = oracle.top_left_singular_vectors(2);
    CHECK(relative_projection_cost(g, u) == doctest::Approx(oracle.relative_cost(u)));
}
