#include <doctest.h>

#include <tuple>

#include "kwtopo/complex.hpp"

using namespace kwtopo;

namespace {

void check_dims(const std::vector<int>& got, const std::vector<int>& expected) {
    REQUIRE(got.size() == expected.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expected[i]);
}

} // namespace

TEST_CASE("3x3 grid 1-complex counts and homology") {
    ChainComplex c = build_grid_1complex(3, 3, 2);
    CHECK(c.cell_count(0) == 9);
    CHECK(c.cell_count(1) == 12);
    // cyclomatic number |A| - |V| + 1 = 4
    check_dims(homology_dims(c), {4, 1});
    check_dims(cohomology_dims(c), {4, 1});
}

TEST_CASE("4x4 grid 2-complex matches the no-hole table") {
    ChainComplex c = build_grid_2complex(4, 4, 2);
    CHECK(c.cell_count(2) == 9);
    CHECK(c.cell_count(1) == 24);
    CHECK(c.cell_count(0) == 16);
    check_dims(homology_dims(c), {0, 0, 1});
}

TEST_CASE("4x4 grid with center hole gains one 1-dimensional hole") {
    ChainComplex c = build_grid_2complex(4, 4, 2, {4});
    CHECK(c.cell_count(2) == 8);
    check_dims(homology_dims(c), {0, 1, 1});
    CHECK_THROWS_AS(build_grid_2complex(4, 4, 2, {9}), InvalidHoleIndex);
}

TEST_CASE("face boundary of s0 and of s0+s1 on the 4x4 grid") {
    ChainComplex c = build_grid_2complex(4, 4, 5);
    const ZqMatrix& d2 = c.boundary(2);
    auto e = [&](const std::string& l) { return c.cell_index(1, l); };
    auto s = [&](const std::string& l) { return c.cell_index(2, l); };

    ZqVec chain(c.cell_count(2), 0);
    chain[s("s0")] = 1;
    ZqVec b = d2.multiply(chain);
    ZqVec expected(c.cell_count(1), 0);
    expected[e("a0_1")] = 1;
    expected[e("a1_5")] = 1;
    expected[e("a4_5")] = 4;
    expected[e("a0_4")] = 4;
    CHECK(b == expected);

    chain[s("s1")] = 1;
    ZqVec b2 = d2.multiply(chain);
    ZqVec expected2(c.cell_count(1), 0);
    expected2[e("a0_1")] = 1;
    expected2[e("a1_2")] = 1;
    expected2[e("a2_6")] = 1;
    expected2[e("a5_6")] = 4;
    expected2[e("a4_5")] = 4;
    expected2[e("a0_4")] = 4;
    CHECK(b2 == expected2);
}

TEST_CASE("2D torus counts, homology, and kernel/image dims") {
    ChainComplex c = build_torus_2complex(2, 2, 2);
    CHECK(c.cell_count(0) == 4);
    CHECK(c.cell_count(1) == 8);
    CHECK(c.cell_count(2) == 4);
    check_dims(homology_dims(c), {1, 2, 1});

    for (int l1 : {2, 3, 4})
        for (int l2 : {2, 3, 4}) {
            ChainComplex t = build_torus_2complex(l1, l2, 2);
            check_dims(homology_dims(t), {1, 2, 1});
            check_dims(cohomology_dims(t), {1, 2, 1});
        }

    ChainComplex t3 = build_torus_2complex(3, 3, 2);
    int n = 9;
    CHECK(kernel_basis(t3.boundary(1)).size() == size_t(n + 1));
    CHECK(image_basis(t3.boundary(2)).size() == size_t(n - 1));
}

TEST_CASE("cube lattice 3-complex") {
    ChainComplex c = build_cube_3complex(1, 2);
    CHECK(c.cell_count(3) == 1);
    CHECK(c.cell_count(2) == 6);
    CHECK(c.cell_count(1) == 12);
    CHECK(c.cell_count(0) == 8);
    check_dims(homology_dims(c), {0, 0, 0, 1});

    ChainComplex c2 = build_cube_3complex(2, 2);
    check_dims(homology_dims(c2), {0, 0, 0, 1});
}

TEST_CASE("3-torus 3-complex") {
    ChainComplex c1 = build_torus_3complex(1, 2);
    CHECK(c1.cell_count(3) == 1);
    CHECK(c1.cell_count(2) == 3);
    CHECK(c1.cell_count(1) == 3);
    CHECK(c1.cell_count(0) == 1);
    check_dims(homology_dims(c1), {1, 3, 3, 1});

    ChainComplex c2 = build_torus_3complex(2, 2);
    int n = 8;
    CHECK(c2.cell_count(3) == size_t(n));
    CHECK(c2.cell_count(2) == size_t(3 * n));
    CHECK(c2.cell_count(1) == size_t(3 * n));
    CHECK(c2.cell_count(0) == size_t(n));
    check_dims(homology_dims(c2), {1, 3, 3, 1});
    check_dims(cohomology_dims(c2), {1, 3, 3, 1});
}

TEST_CASE("boundary composition vanishes for every builder and modulus") {
    for (uint32_t q : {2u, 3u, 5u}) {
        build_grid_1complex(3, 4, q).validate();
        build_grid_2complex(4, 4, q).validate();
        build_grid_2complex(4, 4, q, {4}).validate();
        build_torus_2complex(2, 3, q).validate();
        build_cube_3complex(1, q).validate();
        build_cube_3complex(2, q).validate();
        build_torus_3complex(1, q).validate();
        build_torus_3complex(2, q).validate();
    }
}

TEST_CASE("validate flags a broken complex") {
    ChainComplex c = build_grid_2complex(3, 3, 2);
    ZqMatrix bad = c.boundary(2);
    bad.set(0, 0, int64_t(bad.at(0, 0)) + 1);
    std::vector<std::vector<std::string>> cells;
    for (int i = 0; i <= 2; ++i) cells.push_back(c.cell_labels(i));
    ChainComplex broken(2, cells, {c.boundary(1), bad});
    CHECK_THROWS_AS(broken.validate(), BoundaryConditionViolated);
}

TEST_CASE("disconnected edgeless graph has dim H_0 = number of vertices") {
    ChainComplex c(2, {{"v0", "v1"}, {}}, {ZqMatrix(2, 0, 2)});
    check_dims(homology_dims(c), {0, 2});
}

TEST_CASE("homology dims survive random reorientation") {
    for (uint32_t q : {2u, 3u, 5u}) {
        ChainComplex torus = build_torus_2complex(3, 2, q);
        auto base = homology_dims(torus);
        ChainComplex cube = build_cube_3complex(1, q);
        auto base_cube = homology_dims(cube);
        for (uint64_t seed = 0; seed < 10; ++seed) {
            ChainComplex r = with_randomized_orientations(torus, seed);
            r.validate();
            check_dims(homology_dims(r), base);
            ChainComplex rc = with_randomized_orientations(cube, seed);
            rc.validate();
            check_dims(homology_dims(rc), base_cube);
        }
    }
}

TEST_CASE("torus cycles on the 2x2 torus") {
    ChainComplex c = build_torus_2complex(2, 2, 2);
    TorusCycles cycles = torus_cycles(c);
    CHECK(!cycles.c_d.has_value());

    // each lies in ker boundary(1); span check done inside torus_cycles
    auto kernel = kernel_basis(c.boundary(1));
    CHECK(kernel.size() == 5); // |ker| = 2^5 = 32 = 4 cosets x 8
    CHECK(in_span(kernel, cycles.c_h, 2));
    CHECK(in_span(kernel, cycles.c_v, 2));

    // c_h covers the two horizontal edges of row 0
    CHECK(cycles.c_h[c.cell_index(1, "h0_0")] == 1);
    CHECK(cycles.c_h[c.cell_index(1, "h0_1")] == 1);

    CHECK_THROWS_AS(torus_cycles(build_grid_2complex(3, 3, 2)), NotATorus);
}

TEST_CASE("cosets of im boundary(2) partition ker boundary(1)") {
    // derived: enumerate ker via kernel_basis and classify by coset
    const std::vector<std::tuple<int, int, uint32_t>> cases = {
        {3, 3, 2u}, {2, 2, 3u}, {2, 2, 2u}};
    for (auto [l1, l2, q] : cases) {
        ChainComplex c = build_torus_2complex(l1, l2, q);
        auto kernel = kernel_basis(c.boundary(1));
        auto im2 = image_basis(c.boundary(2));
        TorusCycles cyc = torus_cycles(c);

        SpanEnumerator span(kernel, c.cell_count(1), q);
        uint64_t coset_size = 1;
        for (size_t i = 0; i < im2.size(); ++i) coset_size *= q;

        uint64_t classified = 0;
        for (uint32_t ah = 0; ah < q; ++ah)
            for (uint32_t av = 0; av < q; ++av) {
                uint64_t count = 0;
                for (uint64_t i = 0; i < span.size(); ++i) {
                    ZqVec x = span.at(i);
                    for (size_t e = 0; e < x.size(); ++e) {
                        uint8_t shift = zq_add(zq_mul(uint8_t(ah), cyc.c_h[e], q),
                                               zq_mul(uint8_t(av), cyc.c_v[e], q), q);
                        x[e] = zq_sub(x[e], shift, q);
                    }
                    if (in_span(im2, x, q)) ++count;
                }
                CHECK(count == coset_size);
                classified += count;
            }
        CHECK(classified == span.size());
    }
}

TEST_CASE("3-torus homology does not depend on modulus among small primes") {
    for (uint32_t q : {2u, 3u, 5u}) {
        ChainComplex c = build_torus_3complex(2, q);
        check_dims(homology_dims(c), {1, 3, 3, 1});
    }
}

TEST_CASE("composite modulus builds but refuses homology") {
    ChainComplex c = build_torus_2complex(2, 2, 4);
    c.validate();
    CHECK_THROWS_AS(homology_dims(c), CompositeModulus);
}
