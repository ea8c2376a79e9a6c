#include "kwtopo/complex.hpp"

#include <algorithm>
#include <random>

namespace kwtopo {

ChainComplex::ChainComplex(uint32_t q, std::vector<std::vector<std::string>> cells,
                           std::vector<ZqMatrix> boundaries,
                           std::optional<TorusInfo> torus)
    : q_(q), cells_(std::move(cells)), boundaries_(std::move(boundaries)),
      torus_(std::move(torus)) {
    if (cells_.empty()) throw Error("complex needs at least dimension 0");
    if (boundaries_.size() + 1 != cells_.size())
        throw Error("need exactly one boundary matrix per dimension above 0");
    for (size_t i = 0; i < boundaries_.size(); ++i) {
        const ZqMatrix& b = boundaries_[i];
        if (b.rows() != cells_[i].size() || b.cols() != cells_[i + 1].size())
            throw Error("boundary matrix shape does not chain");
        if (b.modulus() != q_) throw Error("boundary matrix modulus mismatch");
    }
}

const ZqMatrix& ChainComplex::boundary(int i) const {
    if (i < 1 || i > top_dimension()) throw Error("boundary index out of range");
    return boundaries_[i - 1];
}

size_t ChainComplex::cell_index(int i, const std::string& label) const {
    const auto& labels = cells_.at(i);
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw Error("unknown cell label " + label);
    return size_t(it - labels.begin());
}

void ChainComplex::validate() const {
    for (int i = 1; i + 1 <= top_dimension(); ++i) {
        const ZqMatrix& a = boundary(i);
        const ZqMatrix& b = boundary(i + 1);
        for (size_t r = 0; r < a.rows(); ++r)
            for (size_t c = 0; c < b.cols(); ++c) {
                uint64_t acc = 0;
                for (size_t k = 0; k < a.cols(); ++k)
                    acc += uint64_t(a.at(r, k)) * b.at(k, c);
                if (acc % q_ != 0)
                    throw BoundaryConditionViolated(
                        "boundary composition nonzero in dimension " + std::to_string(i));
            }
    }
}

namespace {

std::string vertex_label(int i) { return "v" + std::to_string(i); }

} // namespace

ChainComplex build_grid_1complex(int rows, int cols, uint32_t q) {
    if (rows < 2 || cols < 2) throw Error("grid needs rows, cols >= 2");
    int nv = rows * cols;
    std::vector<std::string> vlabels, elabels;
    for (int i = 0; i < nv; ++i) vlabels.push_back(vertex_label(i));

    struct Arc {
        int tail, head;
    };
    std::vector<Arc> arcs;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = r * cols + c;
            if (c + 1 < cols) arcs.push_back({v, v + 1});
            if (r + 1 < rows) arcs.push_back({v, v + cols});
        }
    for (const auto& a : arcs)
        elabels.push_back("a" + std::to_string(a.tail) + "_" + std::to_string(a.head));

    ZqMatrix d1(nv, arcs.size(), q);
    for (size_t j = 0; j < arcs.size(); ++j) {
        d1.set(arcs[j].head, j, 1);
        d1.set(arcs[j].tail, j, -1);
    }
    return ChainComplex(q, {vlabels, elabels}, {std::move(d1)});
}

ChainComplex build_grid_2complex(int rows, int cols, uint32_t q,
                                 const std::set<int>& holes) {
    if (rows < 2 || cols < 2) throw Error("grid needs rows, cols >= 2");
    int n_faces_full = (rows - 1) * (cols - 1);
    for (int h : holes)
        if (h < 0 || h >= n_faces_full)
            throw InvalidHoleIndex("hole index " + std::to_string(h) + " out of range");

    ChainComplex one = build_grid_1complex(rows, cols, q);
    int nv = rows * cols;
    size_t na = one.cell_count(1);

    // Edge lookup by (tail, head) with tail < head.
    auto edge_idx = [&](int a, int b) {
        return one.cell_index(1, "a" + std::to_string(std::min(a, b)) + "_" +
                                     std::to_string(std::max(a, b)));
    };

    std::vector<std::string> slabels;
    ZqMatrix d2(na, n_faces_full - holes.size(), q);
    size_t col = 0;
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c) {
            int face = r * (cols - 1) + c;
            if (holes.count(face)) continue;
            slabels.push_back("s" + std::to_string(face));
            int tl = r * cols + c, tr = tl + 1, bl = tl + cols, br = bl + 1;
            // clockwise: top, right, -bottom, -left
            d2.set(edge_idx(tl, tr), col, 1);
            d2.set(edge_idx(tr, br), col, 1);
            d2.set(edge_idx(bl, br), col, -1);
            d2.set(edge_idx(tl, bl), col, -1);
            ++col;
        }

    std::vector<std::string> vlabels, elabels;
    for (int i = 0; i < nv; ++i) vlabels.push_back(vertex_label(i));
    for (size_t j = 0; j < na; ++j) elabels.push_back(one.cell_labels(1)[j]);

    ZqMatrix d1 = one.boundary(1);
    return ChainComplex(q, {vlabels, elabels, slabels}, {std::move(d1), std::move(d2)});
}

ChainComplex build_torus_2complex(int l1, int l2, uint32_t q) {
    if (l1 < 2 || l2 < 2) throw Error("torus needs L1, L2 >= 2");
    int n = l1 * l2;
    auto vid = [&](int r, int c) { return ((r % l1 + l1) % l1) * l2 + ((c % l2 + l2) % l2); };
    // horizontal edges first (row-major), then vertical (row-major)
    auto hid = [&](int r, int c) { return r * l2 + c; };
    auto uid = [&](int r, int c) { return n + r * l2 + c; };

    std::vector<std::string> vlabels, elabels(2 * n), slabels;
    for (int i = 0; i < n; ++i) vlabels.push_back(vertex_label(i));

    ZqMatrix d1(n, 2 * n, q);
    auto bump1 = [&](int v, int e, int delta) {
        d1.set(v, e, int64_t(d1.at(v, e)) + delta);
    };
    for (int r = 0; r < l1; ++r)
        for (int c = 0; c < l2; ++c) {
            bump1(vid(r, c + 1), hid(r, c), 1);
            bump1(vid(r, c), hid(r, c), -1);
            elabels[hid(r, c)] = "h" + std::to_string(r) + "_" + std::to_string(c);
            bump1(vid(r + 1, c), uid(r, c), 1);
            bump1(vid(r, c), uid(r, c), -1);
            elabels[uid(r, c)] = "u" + std::to_string(r) + "_" + std::to_string(c);
        }

    ZqMatrix d2(2 * n, n, q);
    for (int r = 0; r < l1; ++r)
        for (int c = 0; c < l2; ++c) {
            int s = r * l2 + c;
            slabels.push_back("s" + std::to_string(r) + "_" + std::to_string(c));
            auto bump = [&](int edge, int delta) {
                d2.set(edge, s, int64_t(d2.at(edge, s)) + delta);
            };
            bump(hid(r, c), 1);
            bump(uid(r, (c + 1) % l2), 1);
            bump(hid((r + 1) % l1, c), -1);
            bump(uid(r, c), -1);
        }

    TorusInfo info;
    info.dim = 2;
    info.lengths = {l1, l2};
    ZqVec ch(2 * n, 0), cv(2 * n, 0);
    for (int c = 0; c < l2; ++c) ch[hid(0, c)] = 1;
    for (int r = 0; r < l1; ++r) cv[uid(r, 0)] = 1;
    info.cycles = {ch, cv};

    return ChainComplex(q, {vlabels, elabels, slabels},
                        {std::move(d1), std::move(d2)}, std::move(info));
}

namespace {

// Shared 3D builder. `wrap` selects torus identification; side = L+1 for
// the cube lattice, L for the torus.
ChainComplex build_3d(int l, uint32_t q, bool wrap) {
    if (l < 1) throw Error("lattice needs L >= 1");
    int side = wrap ? l : l + 1;
    auto coord_ok = [&](int t) { return wrap || t < side; };
    auto norm = [&](int t) { return wrap ? ((t % side) + side) % side : t; };
    auto vid = [&](int x, int y, int z) {
        return (norm(x) * side + norm(y)) * side + norm(z);
    };

    int nv = side * side * side;
    std::vector<std::string> vlabels;
    for (int i = 0; i < nv; ++i) vlabels.push_back(vertex_label(i));

    // Edges along axis a at position p, axis-major then lex order.
    struct Key {
        int a, x, y, z;
    };
    std::vector<Key> edge_keys, face_keys, cube_keys;
    // extent of a coordinate: cells extending along an axis need one less
    // slot than vertices when the lattice does not wrap
    auto extent = [&](bool grows) { return wrap ? l : (grows ? l : l + 1); };

    for (int a = 0; a < 3; ++a)
        for (int x = 0; x < extent(a == 0); ++x)
            for (int y = 0; y < extent(a == 1); ++y)
                for (int z = 0; z < extent(a == 2); ++z)
                    edge_keys.push_back({a, x, y, z});

    // Faces indexed by the omitted axis pair (a,b), a < b: (0,1), (0,2), (1,2).
    const int face_axes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int f = 0; f < 3; ++f) {
        int a = face_axes[f][0], b = face_axes[f][1];
        for (int x = 0; x < extent(a == 0 || b == 0); ++x)
            for (int y = 0; y < extent(a == 1 || b == 1); ++y)
                for (int z = 0; z < extent(a == 2 || b == 2); ++z)
                    face_keys.push_back({f, x, y, z});
    }
    for (int x = 0; x < l; ++x)
        for (int y = 0; y < l; ++y)
            for (int z = 0; z < l; ++z) cube_keys.push_back({0, x, y, z});

    auto find_edge = [&](int a, int x, int y, int z) -> size_t {
        int p[3] = {wrap ? norm(x) : x, wrap ? norm(y) : y, wrap ? norm(z) : z};
        for (size_t i = 0; i < edge_keys.size(); ++i) {
            const Key& k = edge_keys[i];
            if (k.a == a && k.x == p[0] && k.y == p[1] && k.z == p[2]) return i;
        }
        throw Error("internal: edge lookup failed");
    };
    auto find_face = [&](int f, int x, int y, int z) -> size_t {
        int p[3] = {wrap ? norm(x) : x, wrap ? norm(y) : y, wrap ? norm(z) : z};
        for (size_t i = 0; i < face_keys.size(); ++i) {
            const Key& k = face_keys[i];
            if (k.a == f && k.x == p[0] && k.y == p[1] && k.z == p[2]) return i;
        }
        throw Error("internal: face lookup failed");
    };

    std::vector<std::string> elabels, slabels, plabels;
    for (const Key& k : edge_keys)
        elabels.push_back("e" + std::to_string(k.a) + "_" + std::to_string(k.x) + "_" +
                          std::to_string(k.y) + "_" + std::to_string(k.z));
    for (const Key& k : face_keys)
        slabels.push_back("f" + std::to_string(face_axes[k.a][0]) +
                          std::to_string(face_axes[k.a][1]) + "_" + std::to_string(k.x) +
                          "_" + std::to_string(k.y) + "_" + std::to_string(k.z));
    for (const Key& k : cube_keys)
        plabels.push_back("p" + std::to_string(k.x) + "_" + std::to_string(k.y) + "_" +
                          std::to_string(k.z));

    ZqMatrix d1(nv, edge_keys.size(), q);
    for (size_t j = 0; j < edge_keys.size(); ++j) {
        const Key& k = edge_keys[j];
        int head[3] = {k.x, k.y, k.z};
        head[k.a] += 1;
        int t = vid(k.x, k.y, k.z);
        int h = vid(head[0], head[1], head[2]);
        d1.set(h, j, int64_t(d1.at(h, j)) + 1);
        d1.set(t, j, int64_t(d1.at(t, j)) - 1);
    }

    // Square boundary in the (a,b) plane at corner p:
    //   edge_a(p) + edge_b(p + e_a) - edge_a(p + e_b) - edge_b(p)
    ZqMatrix d2(edge_keys.size(), face_keys.size(), q);
    for (size_t j = 0; j < face_keys.size(); ++j) {
        const Key& k = face_keys[j];
        int a = face_axes[k.a][0], b = face_axes[k.a][1];
        int p[3] = {k.x, k.y, k.z};
        int pa[3] = {k.x, k.y, k.z};
        pa[a] += 1;
        int pb[3] = {k.x, k.y, k.z};
        pb[b] += 1;
        auto bump = [&](size_t edge, int delta) {
            d2.set(edge, j, int64_t(d2.at(edge, j)) + delta);
        };
        bump(find_edge(a, p[0], p[1], p[2]), 1);
        bump(find_edge(b, pa[0], pa[1], pa[2]), 1);
        bump(find_edge(a, pb[0], pb[1], pb[2]), -1);
        bump(find_edge(b, p[0], p[1], p[2]), -1);
    }

    // Cubical boundary: sum over axes d of (-1)^d (far face - near face),
    // where the face omits axis d.
    ZqMatrix d3(face_keys.size(), cube_keys.size(), q);
    for (size_t j = 0; j < cube_keys.size(); ++j) {
        const Key& k = cube_keys[j];
        auto bump = [&](size_t face, int delta) {
            d3.set(face, j, int64_t(d3.at(face, j)) + delta);
        };
        for (int d = 0; d < 3; ++d) {
            // face plane uses the two axes other than d
            int fidx = d == 0 ? 2 : (d == 1 ? 1 : 0); // (1,2), (0,2), (0,1)
            int sign = (d % 2 == 0) ? 1 : -1;
            int far_p[3] = {k.x, k.y, k.z};
            far_p[d] += 1;
            bump(find_face(fidx, far_p[0], far_p[1], far_p[2]), sign);
            bump(find_face(fidx, k.x, k.y, k.z), -sign);
        }
    }

    std::optional<TorusInfo> info;
    if (wrap) {
        TorusInfo t;
        t.dim = 3;
        t.lengths = {l, l, l};
        for (int a = 0; a < 3; ++a) {
            ZqVec cyc(edge_keys.size(), 0);
            for (int step = 0; step < l; ++step) {
                int p[3] = {0, 0, 0};
                p[a] = step;
                cyc[find_edge(a, p[0], p[1], p[2])] = 1;
            }
            t.cycles.push_back(std::move(cyc));
        }
        info = std::move(t);
    }

    return ChainComplex(q, {vlabels, elabels, slabels, plabels},
                        {std::move(d1), std::move(d2), std::move(d3)}, std::move(info));
}

} // namespace

ChainComplex build_cube_3complex(int l, uint32_t q) { return build_3d(l, q, false); }

ChainComplex build_torus_3complex(int l, uint32_t q) { return build_3d(l, q, true); }

std::vector<int> homology_dims(const ChainComplex& c) {
    require_prime(c.modulus());
    c.validate();
    int m = c.top_dimension();
    std::vector<size_t> r(m + 2, 0); // r[i] = rank of boundary(i); r[0] = r[m+1] = 0
    for (int i = 1; i <= m; ++i) r[i] = rank(c.boundary(i));
    std::vector<int> dims;
    for (int i = m; i >= 0; --i)
        dims.push_back(int(c.cell_count(i)) - int(r[i]) - int(r[i + 1]));
    return dims;
}

std::vector<int> cohomology_dims(const ChainComplex& c) {
    require_prime(c.modulus());
    c.validate();
    int m = c.top_dimension();
    // d_i is the transpose of boundary(i); hat H_i = ker d_{i+1} / im d_i.
    std::vector<size_t> r(m + 2, 0);
    for (int i = 1; i <= m; ++i) r[i] = rank(c.boundary(i).transposed());
    std::vector<int> dims;
    for (int i = m; i >= 0; --i)
        dims.push_back(int(c.cell_count(i)) - int(r[i + 1]) - int(r[i]));
    return dims;
}

TorusCycles torus_cycles(const ChainComplex& c) {
    const auto& info = c.torus_info();
    if (!info) throw NotATorus("complex was not built by a torus builder");

    for (const ZqVec& cyc : info->cycles) {
        ZqVec b = c.boundary(1).multiply(cyc);
        for (uint8_t v : b)
            if (v != 0) throw Error("torus cycle has nonzero boundary");
    }
    if (is_prime(c.modulus())) {
        // each cycle must be independent of im boundary(2) plus the others
        auto im2 = image_basis(c.boundary(2));
        for (size_t i = 0; i < info->cycles.size(); ++i) {
            auto others = im2;
            for (size_t j = 0; j < info->cycles.size(); ++j)
                if (j != i) others.push_back(info->cycles[j]);
            if (in_span(others, info->cycles[i], c.modulus()))
                throw Error("torus cycle lies in the span of boundaries");
        }
    }

    TorusCycles out;
    out.c_h = info->cycles.at(0);
    out.c_v = info->cycles.at(1);
    if (info->cycles.size() > 2) out.c_d = info->cycles.at(2);
    return out;
}

ChainComplex with_randomized_orientations(const ChainComplex& c, uint64_t seed) {
    std::mt19937_64 rng(seed);
    int m = c.top_dimension();
    std::vector<ZqMatrix> boundaries;
    for (int i = 1; i <= m; ++i) boundaries.push_back(c.boundary(i));

    uint32_t q = c.modulus();
    for (int i = 1; i <= m; ++i) {
        // flipping an i-cell negates its column in boundary(i) and its row
        // in boundary(i+1)
        size_t count = c.cell_count(i);
        for (size_t cell = 0; cell < count; ++cell) {
            if ((rng() & 1) == 0) continue;
            ZqMatrix& bi = boundaries[i - 1];
            for (size_t r = 0; r < bi.rows(); ++r)
                bi.set(r, cell, zq_neg(bi.at(r, cell), q));
            if (i + 1 <= m) {
                ZqMatrix& bj = boundaries[i];
                for (size_t col = 0; col < bj.cols(); ++col)
                    bj.set(cell, col, zq_neg(bj.at(cell, col), q));
            }
        }
    }

    std::vector<std::vector<std::string>> cells;
    for (int i = 0; i <= m; ++i) cells.push_back(c.cell_labels(i));
    return ChainComplex(q, std::move(cells), std::move(boundaries), c.torus_info());
}

} // namespace kwtopo
