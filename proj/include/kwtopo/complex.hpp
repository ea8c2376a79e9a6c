#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kwtopo/linalg.hpp"

namespace kwtopo {

/// Torus metadata attached by the torus builders: lattice sizes and the
/// canonical nontrivial 1-cycles (c_h, c_v and, in 3D, c_d) as 1-chains.
struct TorusInfo {
    int dim = 2;                 // 2 or 3
    std::vector<int> lengths;    // L1, L2 (2D) or L, L, L (3D)
    std::vector<ZqVec> cycles;   // c_h, c_v [, c_d]
};

/// Chain complex C_m -> ... -> C_0 over Z_q. cells[i] holds the labels of
/// the i-cells; boundary(i) is the matrix of the boundary operator from
/// C_i to C_{i-1} (entries 0, 1, q-1). Boundary matrices must compose to
/// zero; validate() checks this for any q.
class ChainComplex {
public:
    ChainComplex(uint32_t q, std::vector<std::vector<std::string>> cells,
                 std::vector<ZqMatrix> boundaries,
                 std::optional<TorusInfo> torus = std::nullopt);

    uint32_t modulus() const { return q_; }
    int top_dimension() const { return int(cells_.size()) - 1; }
    size_t cell_count(int i) const { return cells_[i].size(); }
    const std::vector<std::string>& cell_labels(int i) const { return cells_[i]; }

    /// Matrix of the boundary operator C_i -> C_{i-1}, 1 <= i <= m.
    const ZqMatrix& boundary(int i) const;

    const std::optional<TorusInfo>& torus_info() const { return torus_; }

    /// Index of the cell with the given label in dimension i.
    size_t cell_index(int i, const std::string& label) const;

    /// Throws BoundaryConditionViolated if some composition is nonzero.
    void validate() const;

private:
    uint32_t q_;
    std::vector<std::vector<std::string>> cells_;
    std::vector<ZqMatrix> boundaries_; // boundaries_[i-1] = boundary of dim i
    std::optional<TorusInfo> torus_;
};

/// Directed graph of a rows x cols grid of vertices (the 1-skeleton only,
/// no faces). Edges run from lower to higher vertex index.
ChainComplex build_grid_1complex(int rows, int cols, uint32_t q);

/// 2-complex of a rows x cols grid of vertices with the inner squares as
/// faces (clockwise orientation, no outer face). `holes` removes faces by
/// index (row-major over the inner squares).
ChainComplex build_grid_2complex(int rows, int cols, uint32_t q,
                                 const std::set<int>& holes = {});

/// 2-complex of an L1 x L2 toroidal lattice: n vertices, 2n edges, n faces.
/// Wrap edges close each row/column back to index 0, matching the
/// canonical c_h and c_v representatives.
ChainComplex build_torus_2complex(int l1, int l2, uint32_t q);

/// 3-complex of an L x L x L cube lattice with (L+1)^3 vertices.
ChainComplex build_cube_3complex(int l, uint32_t q);

/// 3-complex of the L x L x L three-dimensional torus (n = L^3 vertices,
/// 3n edges, 3n faces, n cubes).
ChainComplex build_torus_3complex(int l, uint32_t q);

/// Homology dimensions ordered top-down: (dim H_m, ..., dim H_0).
/// Requires prime q and a valid complex.
std::vector<int> homology_dims(const ChainComplex& c);

/// Cohomology dimensions from the transposed (coboundary) matrices; equals
/// homology_dims entrywise.
std::vector<int> cohomology_dims(const ChainComplex& c);

/// Canonical torus cycle representatives. Requires a torus-built complex
/// (NotATorus otherwise); each chain lies in ker boundary(1) and, for prime
/// q, outside the span of im boundary(2) plus the other cycles.
struct TorusCycles {
    ZqVec c_h;
    ZqVec c_v;
    std::optional<ZqVec> c_d;
};

TorusCycles torus_cycles(const ChainComplex& c);

/// Copy of the complex with every edge direction and face/polyhedron
/// orientation independently flipped at random (deterministic in `seed`).
/// Homology dimensions are invariant under this.
ChainComplex with_randomized_orientations(const ChainComplex& c, uint64_t seed);

} // namespace kwtopo
