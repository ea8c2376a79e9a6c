#include <doctest.h>

#include <random>
#include <set>

#include "kwtopo/complex.hpp"
#include "kwtopo/linalg.hpp"
#include "kwtopo/zq.hpp"

using namespace kwtopo;

namespace {

ZqMatrix random_matrix(size_t rows, size_t cols, uint32_t q, std::mt19937& rng) {
    ZqMatrix m(rows, cols, q);
    std::uniform_int_distribution<int> dist(0, int(q) - 1);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.set(r, c, dist(rng));
    return m;
}

bool is_zero(const ZqVec& v) {
    for (uint8_t x : v)
        if (x) return false;
    return true;
}

} // namespace

TEST_CASE("rank basics") {
    CHECK(rank(ZqMatrix::identity(3, 2)) == 3);
    CHECK(rank(ZqMatrix(2, 5, 3)) == 0);
}

TEST_CASE("rank rejects composite modulus") {
    CHECK_THROWS_AS(rank(ZqMatrix::identity(2, 4)), CompositeModulus);
    CHECK_THROWS_AS(rank(ZqMatrix::identity(2, 6)), CompositeModulus);
}

TEST_CASE("rank of the 3x3 grid boundary over F_2") {
    ChainComplex grid = build_grid_1complex(3, 3, 2);
    const ZqMatrix& d1 = grid.boundary(1);
    CHECK(d1.rows() == 9);
    CHECK(d1.cols() == 12);
    // dim ker = 12 - 8 = 4, the four independent square cycles
    CHECK(rank(d1) == 8);
    CHECK(kernel_basis(d1).size() == 4);
}

TEST_CASE("kernel basis basics") {
    CHECK(kernel_basis(ZqMatrix::identity(4, 2)).empty());

    ZqMatrix m(1, 2, 2);
    m.set(0, 0, 1);
    m.set(0, 1, 1);
    auto basis = kernel_basis(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == ZqVec{1, 1});
}

TEST_CASE("kernel of the 2x2 torus boundary has dimension 5") {
    ChainComplex torus = build_torus_2complex(2, 2, 2);
    auto basis = kernel_basis(torus.boundary(1));
    CHECK(basis.size() == 5);
    for (const auto& v : basis) CHECK(is_zero(torus.boundary(1).multiply(v)));
}

TEST_CASE("image basis basics") {
    CHECK(image_basis(ZqMatrix(3, 3, 2)).empty());

    ChainComplex torus = build_torus_2complex(2, 2, 2);
    CHECK(image_basis(torus.boundary(2)).size() == 3);

    ChainComplex grid = build_grid_2complex(4, 4, 2);
    auto faces = image_basis(grid.boundary(2));
    CHECK(faces.size() == 9); // the nine face boundaries are independent
}

TEST_CASE("image basis vectors satisfy the column-space membership oracle") {
    std::mt19937 rng(7);
    for (uint32_t q : {2u, 3u, 5u}) {
        ZqMatrix m = random_matrix(5, 7, q, rng);
        auto basis = image_basis(m);
        CHECK(basis.size() == rank(m));
        // every column must lie in the span of the returned basis
        for (size_t c = 0; c < m.cols(); ++c) CHECK(in_span(basis, m.column(c), q));
    }
}

TEST_CASE("enumerate_span small cases") {
    SpanEnumerator empty({}, 3, 2);
    CHECK(empty.size() == 1);
    CHECK(empty.at(0) == ZqVec{0, 0, 0});

    SpanEnumerator single({{1, 0, 1}}, 3, 2);
    CHECK(single.size() == 2);
    CHECK(single.at(0) == ZqVec{0, 0, 0});
    CHECK(single.at(1) == ZqVec{1, 0, 1});
}

TEST_CASE("enumerate_span of im boundary(2) matches brute-force membership") {
    // derived oracle: filter all 2^8 edge vectors by column-space membership
    ChainComplex torus = build_torus_2complex(2, 2, 2);
    auto basis = image_basis(torus.boundary(2));
    REQUIRE(basis.size() == 3);

    std::set<ZqVec> brute;
    for (uint32_t bits = 0; bits < 256; ++bits) {
        ZqVec v(8);
        for (size_t i = 0; i < 8; ++i) v[i] = (bits >> i) & 1;
        if (in_span(basis, v, 2)) brute.insert(v);
    }
    REQUIRE(brute.size() == 8);

    SpanEnumerator span(basis, 8, 2);
    std::set<ZqVec> enumerated;
    for (uint64_t i = 0; i < span.size(); ++i) enumerated.insert(span.at(i));
    CHECK(enumerated == brute);
}

TEST_CASE("enumerate_span budget") {
    std::vector<ZqVec> basis(30, ZqVec(4, 1));
    CHECK_THROWS_AS(SpanEnumerator(basis, 4, 2, 1 << 10), BudgetExceeded);
}

TEST_CASE("orthogonal complement basics") {
    // parity pair is self-orthogonal over F_2
    auto c = orthogonal_complement({{1, 1}}, 2, 2);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == ZqVec{1, 1});

    // complement of the full space is trivial
    auto full = orthogonal_complement({{1, 0}, {0, 1}}, 2, 2);
    CHECK(full.empty());
}

TEST_CASE("complement of ker boundary(1) equals image of the transpose") {
    ChainComplex torus = build_torus_2complex(2, 2, 2);
    auto kernel = kernel_basis(torus.boundary(1));
    auto complement = orthogonal_complement(kernel, 8, 2);
    auto im_d1 = image_basis(torus.boundary(1).transposed());
    CHECK(same_span(complement, im_d1, 8, 2));
}

TEST_CASE("rank equals rank of transpose on random matrices") {
    std::mt19937 rng(11);
    for (uint32_t q : {2u, 3u, 5u, 7u}) {
        for (int trial = 0; trial < 20; ++trial) {
            ZqMatrix m = random_matrix(4 + trial % 3, 6, q, rng);
            CHECK(rank(m) == rank(m.transposed()));
        }
    }
}

TEST_CASE("rank-nullity holds exactly") {
    std::mt19937 rng(13);
    for (uint32_t q : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 20; ++trial) {
            ZqMatrix m = random_matrix(5, 8, q, rng);
            CHECK(kernel_basis(m).size() + image_basis(m).size() == m.cols());
        }
    }
}

TEST_CASE("double orthogonal complement restores the span") {
    std::mt19937 rng(17);
    for (uint32_t q : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 10; ++trial) {
            ZqMatrix m = random_matrix(3, 6, q, rng);
            auto basis = image_basis(m.transposed()); // row space as vectors
            auto twice = orthogonal_complement(orthogonal_complement(basis, 6, q), 6, q);
            CHECK(same_span(basis, twice, 6, q));
        }
    }
}

TEST_CASE("grid boundary calculations over F_5") {
    // concatenated path from v0 to v7 and a weighted combination
    ChainComplex grid = build_grid_1complex(3, 3, 5);
    const ZqMatrix& d1 = grid.boundary(1);
    auto edge = [&](const std::string& label) { return grid.cell_index(1, label); };

    ZqVec path(12, 0);
    path[edge("a0_1")] = 1;
    path[edge("a1_4")] = 1;
    path[edge("a4_7")] = 1;
    ZqVec b = d1.multiply(path);
    ZqVec expected(9, 0);
    expected[7] = 1;
    expected[0] = 4; // -1 mod 5
    CHECK(b == expected);

    ZqVec weighted(12, 0);
    weighted[edge("a6_7")] = 2;
    weighted[edge("a7_8")] = 3;
    ZqVec b2 = d1.multiply(weighted);
    ZqVec expected2(9, 0);
    expected2[8] = 3;
    expected2[7] = 4; // -1
    expected2[6] = 3; // -2
    CHECK(b2 == expected2);
}

TEST_CASE("ZqElem arithmetic stays reduced and rejects mixed moduli") {
    ZqElem a(7, 5), b(4, 5);
    CHECK((a + b).value == 1);
    CHECK((a - b).value == 3);
    CHECK((a * b).value == 3);
    CHECK((-b).value == 1);
    CHECK(ZqElem(-3, 5).value == 2);
    CHECK_THROWS_AS((void)(a + ZqElem(1, 7)), Error);
}

TEST_CASE("character multiplicativity") {
    for (uint32_t q : {2u, 3u, 5u, 6u}) {
        for (uint32_t k = 0; k < q; ++k) {
            Character chi(q, k);
            for (uint32_t x = 0; x < q; ++x)
                for (uint32_t y = 0; y < q; ++y) {
                    Cplx lhs = chi(zq_add(uint8_t(x), uint8_t(y), q));
                    Cplx rhs = chi(uint8_t(x)) * chi(uint8_t(y));
                    CHECK(std::abs(lhs - rhs) <= 1e-12);
                }
            CHECK(std::abs(chi(0) - Cplx(1.0)) <= 1e-15);
        }
    }
}

TEST_CASE("character orthogonality") {
    for (uint32_t q : {2u, 3u, 5u, 7u}) {
        for (uint32_t j = 0; j < q; ++j)
            for (uint32_t k = 0; k < q; ++k) {
                Character cj(q, j), ck(q, k);
                Cplx sum = 0.0;
                for (uint32_t x = 0; x < q; ++x)
                    sum += cj(uint8_t(x)) * ck(zq_neg(uint8_t(x), q));
                Cplx expected = (j == k) ? Cplx(double(q)) : Cplx(0.0);
                CHECK(std::abs(sum - expected) <= 1e-9);
            }
    }
}
