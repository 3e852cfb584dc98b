#include "figrl/clustering.hpp"
#include "figrl/common.hpp"
#include "figrl/rng.hpp"

#include "testutil.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace figrl;

namespace {

// two well-separated 2-d blobs, `per` points each
RowMatrix blobs(std::size_t per, std::uint64_t seed) {
    RowMatrix pts(2 * per, 2);
    std::vector<double> noise(4 * per);
    rng::gaussian_fill(seed, 0, noise.data(), noise.size());
    for (std::size_t i = 0; i < per; ++i) {
        pts(i, 0) = 0.0 + 0.3 * noise[2 * i];
        pts(i, 1) = 0.0 + 0.3 * noise[2 * i + 1];
        pts(per + i, 0) = 10.0 + 0.3 * noise[2 * per + 2 * i];
        pts(per + i, 1) = 10.0 + 0.3 * noise[2 * per + 2 * i + 1];
    }
    return pts;
}

bool splits_blobs(const Clustering& c, std::size_t per) {
    const std::uint32_t first = c.assignment[0];
    for (std::size_t i = 0; i < per; ++i)
        if (c.assignment[i] != first) return false;
    for (std::size_t i = per; i < 2 * per; ++i)
        if (c.assignment[i] == first) return false;
    return true;
}

} // namespace

TEST_CASE("kmeans recovers separated blobs") {
    const RowMatrix pts = blobs(40, 1);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Clustering c = kmeans(pts, 2, seed);
        REQUIRE(c.k == 2);
        CHECK(splits_blobs(c, 40));
    }
}

TEST_CASE("kmeans objective matches a manual recomputation") {
    const RowMatrix pts = blobs(25, 2);
    const Clustering c = kmeans(pts, 3, 11);
    std::vector<Eigen::RowVector2d> cen(3, Eigen::RowVector2d::Zero());
    std::vector<std::size_t> cnt(3, 0);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        cen[c.assignment[i]] += pts.row(i);
        ++cnt[c.assignment[i]];
    }
    for (std::size_t j = 0; j < 3; ++j)
        if (cnt[j]) cen[j] /= static_cast<double>(cnt[j]);
    double obj = 0;
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
        obj += (pts.row(i) - cen[c.assignment[i]]).squaredNorm();
    CHECK(kmeans_objective(pts, c) == doctest::Approx(obj).epsilon(1e-12));
}

TEST_CASE("kmeans is deterministic per seed") {
    const RowMatrix pts = blobs(30, 3);
    const Clustering a = kmeans(pts, 4, 9);
    const Clustering b = kmeans(pts, 4, 9);
    CHECK(a.assignment == b.assignment);
}

TEST_CASE("kmeans handles k=1 and degenerate duplicates") {
    const RowMatrix pts = blobs(10, 4);
    const Clustering c1 = kmeans(pts, 1, 0);
    CHECK(c1.k == 1);
    CHECK(std::set<std::uint32_t>(c1.assignment.begin(), c1.assignment.end()).size() == 1);

    RowMatrix dup(6, 2);
    for (int i = 0; i < 6; ++i) dup.row(i) << 1.0, 2.0; // all identical
    const Clustering cd = kmeans(dup, 3, 5);            // forces empty-cluster repair
    REQUIRE(cd.assignment.size() == 6);
    for (const auto a : cd.assignment) CHECK(a < 3);
    CHECK(kmeans_objective(dup, cd) == doctest::Approx(0.0));
}

TEST_CASE("kmeans validates inputs") {
    const RowMatrix pts = blobs(5, 6);
    CHECK_THROWS_AS(kmeans(pts, 0, 1), ValidationError);
    CHECK_THROWS_AS(kmeans(pts, 11, 1), ValidationError); // k > n
    Clustering bad;
    bad.k = 2;
    bad.assignment = {0, 1};
    CHECK_THROWS_AS(kmeans_objective(pts, bad), ValidationError); // size mismatch
    Clustering label;
    label.k = 2;
    label.assignment.assign(10, 7);
    CHECK_THROWS_AS(kmeans_objective(pts, label), ValidationError);
}

TEST_CASE("agglomerative recovers separated blobs") {
    const RowMatrix pts = blobs(20, 7);
    const Clustering c = agglomerative(pts, 2);
    REQUIRE(c.k == 2);
    CHECK(splits_blobs(c, 20));
}

TEST_CASE("agglomerative line tie-break is lexicographic") {
    RowMatrix pts(4, 1);
    pts << 0.0, 1.0, 2.0, 3.0;
    const Clustering c = agglomerative(pts, 2);
    CHECK(c.assignment[0] == c.assignment[1]);
    CHECK(c.assignment[2] == c.assignment[3]);
    CHECK(c.assignment[0] != c.assignment[2]);
    // labels are ordered by smallest member
    CHECK(c.assignment[0] == 0);
    CHECK(c.assignment[2] == 1);

    const Clustering all = agglomerative(pts, 1);
    CHECK(std::set<std::uint32_t>(all.assignment.begin(), all.assignment.end()).size() == 1);
    const Clustering none = agglomerative(pts, 4);
    CHECK(std::set<std::uint32_t>(none.assignment.begin(), none.assignment.end()).size() == 4);
}

TEST_CASE("agglomerative square splits into adjacent pairs deterministically") {
    RowMatrix pts(4, 2);
    pts << 0, 0, 1, 0, 0, 1, 1, 1;
    const Clustering a = agglomerative(pts, 2);
    const Clustering b = agglomerative(pts, 2);
    CHECK(a.assignment == b.assignment);
    // all four pair distances tie; the (0,1) merge happens first
    CHECK(a.assignment[0] == a.assignment[1]);
    CHECK(a.assignment[2] == a.assignment[3]);
}

TEST_CASE("agglomerative validates and refuses huge inputs") {
    const RowMatrix pts = blobs(5, 8);
    CHECK_THROWS_AS(agglomerative(pts, 0), ValidationError);
    CHECK_THROWS_AS(agglomerative(pts, 11), ValidationError);
    const RowMatrix big = RowMatrix::Zero(20001, 1);
    CHECK_THROWS_AS(agglomerative(big, 2), ValidationError);
}

TEST_CASE("row_normalized scales rows to unit length") {
    RowMatrix pts(3, 2);
    pts << 3.0, 4.0, 0.0, 0.0, 0.0, -2.0;
    const RowMatrix nm = row_normalized(pts);
    CHECK(nm(0, 0) == doctest::Approx(0.6));
    CHECK(nm(0, 1) == doctest::Approx(0.8));
    CHECK(nm(1, 0) == 0.0); // zero row untouched
    CHECK(nm(1, 1) == 0.0);
    CHECK(nm(2, 1) == doctest::Approx(-1.0));
    CHECK(nm.row(2).norm() == doctest::Approx(1.0));
}
