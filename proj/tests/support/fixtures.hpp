/**
 * Shared fixture complexes, charts, and actions used across the test and
 * acceptance suites.  The JSON files under fixtures/ mirror these builders;
 * test_io checks they stay in sync.
 */
#pragma once

#include "charcyc/charts.hpp"
#include "charcyc/orbifold.hpp"
#include "charcyc/simplicial_complex.hpp"

namespace charcyc::fixtures {

inline Vec q(std::initializer_list<int> xs) {
    Vec v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

// --- complexes -------------------------------------------------------------

/// Closed interval {a, b, ab}.
inline ComplexPtr interval() { return make_complex({{0, 1}}); }

/// Path a - b - c.
inline ComplexPtr path3() { return make_complex({{0, 1}, {1, 2}}); }

/// Boundary of a triangle (a circle).
inline ComplexPtr triangle_boundary() { return make_complex({{0, 1}, {1, 2}, {0, 2}}); }

inline ComplexPtr filled_triangle() { return make_complex({{0, 1, 2}}); }

inline ComplexPtr square_boundary() { return make_complex({{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

inline ComplexPtr hexagon_boundary() {
    return make_complex({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
}

/// Boundary of the octahedron (a 2-sphere); vertex 2i and 2i+1 are opposite.
inline ComplexPtr octahedron() {
    return make_complex({{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5},
                         {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}});
}

inline ComplexPtr solid_tetrahedron() { return make_complex({{0, 1, 2, 3}}); }

/// Fan triangulation of a disk: center 0, boundary 1..k.
inline ComplexPtr disk_fan(int k = 6) {
    std::vector<Simplex> tris;
    for (int i = 1; i <= k; ++i) tris.push_back({0, i, i % k + 1});
    return make_complex(tris);
}

inline ComplexPtr two_triangles_shared_vertex() { return make_complex({{0, 1, 2}, {0, 3, 4}}); }

// --- charts ----------------------------------------------------------------

/// Filled triangle at (0,0), (1,0), (0,1).
inline ChartPtr triangle_chart() {
    return make_chart(filled_triangle(), 2, {{0, q({0, 0})}, {1, q({1, 0})}, {2, q({0, 1})}});
}

/// Unit square as two triangles.
inline ChartPtr square_chart() {
    return make_chart(make_complex({{0, 1, 2}, {0, 2, 3}}), 2,
                      {{0, q({0, 0})}, {1, q({1, 0})}, {2, q({1, 1})}, {3, q({0, 1})}});
}

/// Hexagonal disk fan around the origin (convex, integer coordinates).
inline ChartPtr disk_chart() {
    return make_chart(disk_fan(6), 2,
                      {{0, q({0, 0})}, {1, q({2, 0})}, {2, q({1, 2})}, {3, q({-1, 2})},
                       {4, q({-2, 0})}, {5, q({-1, -2})}, {6, q({1, -2})}});
}

inline ChartPtr tetrahedron_chart() {
    return make_chart(solid_tetrahedron(), 3,
                      {{0, q({0, 0, 0})}, {1, q({1, 0, 0})}, {2, q({0, 1, 0})}, {3, q({0, 0, 1})}});
}

/// Octahedron boundary embedded at the signed unit vectors.
inline ChartPtr octahedron_chart() {
    return make_chart(octahedron(), 3,
                      {{0, q({1, 0, 0})}, {1, q({-1, 0, 0})}, {2, q({0, 1, 0})},
                       {3, q({0, -1, 0})}, {4, q({0, 0, 1})}, {5, q({0, 0, -1})}});
}

/// Triangulated n-by-n grid with unit squares split along the diagonal;
/// vertex ids are row * (n+1) + col.
inline ChartPtr grid_chart(int n = 3) {
    std::vector<Simplex> tris;
    std::map<Vertex, Vec> coords;
    for (int r = 0; r <= n; ++r)
        for (int c = 0; c <= n; ++c) coords.emplace(r * (n + 1) + c, q({c, r}));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const int a = r * (n + 1) + c, b = a + 1, d = a + n + 1, e = d + 1;
            tris.push_back({a, b, e});
            tris.push_back({a, d, e});
        }
    return make_chart(make_complex(tris), 2, std::move(coords));
}

// --- actions ---------------------------------------------------------------

/// Path a - b - c with the endpoint swap; regular, Z/2.
inline ActionPtr path_swap_action() { return make_action(path3(), {Permutation{{0, 2}, {2, 0}}}); }

/// Hexagon boundary with the antipodal rotation; free Z/2.
inline ActionPtr hexagon_free_action() {
    return make_action(hexagon_boundary(),
                       {Permutation{{0, 3}, {1, 4}, {2, 5}, {3, 0}, {4, 1}, {5, 2}}});
}

/// Square boundary with the full dihedral group (order 8); needs one
/// barycentric subdivision to become regular.
inline ActionPtr square_d4_action() {
    Permutation rot{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    Permutation flip{{1, 3}, {3, 1}};  // reflection through the 0-2 axis
    return make_action(square_boundary(), {rot, flip});
}

/// Triangle boundary rotated by one step; irregular until subdivided.
inline ActionPtr triangle_rotation_action() {
    return make_action(triangle_boundary(), {Permutation{{0, 1}, {1, 2}, {2, 0}}});
}

/// Single closed edge with the vertex swap; irregular (the edge is fixed
/// setwise, not pointwise).
inline ActionPtr edge_swap_action() { return make_action(interval(), {Permutation{{0, 1}, {1, 0}}}); }

// --- equivariant charts ----------------------------------------------------

/// Path at -1, 0, 1 on the line with the reflection.
inline EquivariantChart path_swap_equivariant() {
    ChartPtr chart = make_chart(path3(), 1, {{0, q({-1})}, {1, q({0})}, {2, q({1})}});
    Mat reflect{{Rational(-1)}};
    return EquivariantChart(chart, path_swap_action(), {reflect});
}

/// Square boundary at the signed unit vectors with the dihedral matrices.
inline EquivariantChart square_d4_equivariant() {
    ChartPtr chart = make_chart(square_boundary(), 2,
                                {{0, q({1, 0})}, {1, q({0, 1})}, {2, q({-1, 0})}, {3, q({0, -1})}});
    Mat rot{{Rational(0), Rational(-1)}, {Rational(1), Rational(0)}};
    Mat flip{{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}};
    return EquivariantChart(chart, square_d4_action(), {rot, flip});
}

/// Centrally symmetric hexagon with the antipodal map.
inline EquivariantChart hexagon_antipodal_equivariant() {
    ChartPtr chart = make_chart(hexagon_boundary(), 2,
                                {{0, q({2, 0})}, {1, q({1, 2})}, {2, q({-1, 2})},
                                 {3, q({-2, 0})}, {4, q({-1, -2})}, {5, q({1, -2})}});
    Mat antipode{{Rational(-1), Rational(0)}, {Rational(0), Rational(-1)}};
    return EquivariantChart(chart, hexagon_free_action(), {antipode});
}

}  // namespace charcyc::fixtures
