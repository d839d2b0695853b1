#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cellcount/exact_linalg.hpp"

namespace cellcount {

// A cell complex is presented by its top boundary matrix: one row per ridge
// (codimension-1 cell), one column per facet (top cell). Zero ridges or zero
// facets are legal.
struct CellComplex {
    std::string name;
    std::vector<std::string> ridges;
    std::vector<std::string> facets;
    IntMatrix boundary;

    std::size_t num_ridges() const { return boundary.rows(); }
    std::size_t num_facets() const { return boundary.cols(); }
};

inline CellComplex from_boundary(std::string name, std::vector<std::string> ridges,
                                 std::vector<std::string> facets, IntMatrix boundary) {
    if (ridges.size() != boundary.rows() || facets.size() != boundary.cols())
        throw DimensionMismatch("label counts must match the boundary shape");
    if (std::set<std::string>(ridges.begin(), ridges.end()).size() != ridges.size())
        throw DimensionMismatch("duplicate ridge label");
    if (std::set<std::string>(facets.begin(), facets.end()).size() != facets.size())
        throw DimensionMismatch("duplicate facet label");
    return CellComplex{std::move(name), std::move(ridges), std::move(facets),
                       std::move(boundary)};
}

// Graph as a 1-dimensional complex: ridges are vertices, facets are edges,
// edge (u, v) gets -1 at its tail u and +1 at its head v. Vertices are
// 1-based. A self-loop yields a zero column.
inline CellComplex graph_complex(std::size_t num_vertices,
                                 std::vector<std::pair<std::size_t, std::size_t>> const &edges,
                                 std::string name = "graph") {
    IntMatrix b(num_vertices, edges.size());
    std::vector<std::string> ridges(num_vertices);
    for (std::size_t v = 0; v < num_vertices; ++v)
        ridges[v] = std::to_string(v + 1);
    std::vector<std::string> facets;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        if (u < 1 || v < 1 || u > num_vertices || v > num_vertices)
            throw InvalidEdge("edge (" + std::to_string(u) + "," + std::to_string(v) +
                              ") out of vertex range");
        facets.push_back(std::to_string(u) + "-" + std::to_string(v));
        if (u != v) {
            b.at(u - 1, e) = -1;
            b.at(v - 1, e) = 1;
        }
    }
    // Edge labels may repeat in multigraphs; disambiguate duplicates.
    std::map<std::string, int> seen;
    for (auto &label : facets) {
        int n = ++seen[label];
        if (n > 1)
            label += "#" + std::to_string(n);
    }
    return CellComplex{std::move(name), std::move(ridges), std::move(facets), std::move(b)};
}

namespace detail {

inline std::string vertex_set_label(std::vector<std::size_t> const &verts, std::size_t n) {
    std::string label;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (i && n > 9)
            label += ",";
        label += std::to_string(verts[i] + 1);
    }
    return label;
}

} // namespace detail

// d-skeleton of the simplex on vertices {1..n}, presented by its top
// boundary: facets are the (d+1)-subsets, ridges the d-subsets, and the
// ridge omitting the i-th smallest vertex of a facet gets sign (-1)^i.
inline CellComplex simplex_skeleton(std::size_t n, std::size_t d) {
    if (d < 1 || d >= n)
        throw IndexOutOfRange("simplex_skeleton requires 1 <= d < n");
    std::vector<std::vector<std::size_t>> ridge_sets, facet_sets;
    auto collect = [&](std::size_t size, std::vector<std::vector<std::size_t>> &out) {
        auto idx = detail::first_combination(size);
        do {
            out.push_back(idx);
        } while (detail::next_combination(idx, n));
    };
    collect(d, ridge_sets);
    collect(d + 1, facet_sets);

    std::map<std::vector<std::size_t>, std::size_t> ridge_index;
    for (std::size_t i = 0; i < ridge_sets.size(); ++i)
        ridge_index[ridge_sets[i]] = i;

    IntMatrix b(ridge_sets.size(), facet_sets.size());
    for (std::size_t f = 0; f < facet_sets.size(); ++f) {
        auto const &fs = facet_sets[f];
        for (std::size_t i = 0; i < fs.size(); ++i) {
            std::vector<std::size_t> ridge = fs;
            ridge.erase(ridge.begin() + static_cast<std::ptrdiff_t>(i));
            b.at(ridge_index.at(ridge), f) = (i % 2 == 0) ? 1 : -1;
        }
    }

    std::vector<std::string> ridges, facets;
    for (auto const &rs : ridge_sets)
        ridges.push_back(detail::vertex_set_label(rs, n));
    for (auto const &fs : facet_sets)
        facets.push_back(detail::vertex_set_label(fs, n));
    return CellComplex{"simplex_skeleton(" + std::to_string(n) + "," + std::to_string(d) + ")",
                       std::move(ridges), std::move(facets), std::move(b)};
}

// Built-in examples: "pyramid" is the boundary of the square pyramid surface
// (a cell structure on the 2-sphere), "rp2" the real projective plane with
// one cell per dimension.
inline CellComplex builtin(std::string const &name) {
    if (name == "pyramid") {
        return CellComplex{
            "pyramid",
            {"12", "13", "14", "15", "23", "25", "34", "45"},
            {"123", "134", "145", "125", "2345"},
            IntMatrix::from_rows(std::vector<std::vector<long long>>{
                {1, 0, 0, 1, 0},
                {-1, 1, 0, 0, 0},
                {0, -1, 1, 0, 0},
                {0, 0, -1, -1, 0},
                {1, 0, 0, 0, 1},
                {0, 0, 0, 1, -1},
                {0, 1, 0, 0, 1},
                {0, 0, 1, 0, 1},
            }),
        };
    }
    if (name == "rp2") {
        return CellComplex{
            "rp2",
            {"e"},
            {"f"},
            IntMatrix::from_rows(std::vector<std::vector<long long>>{{2}}),
        };
    }
    throw UnknownBuiltin(name);
}

inline std::size_t facet_index(CellComplex const &x, std::string const &label) {
    auto it = std::find(x.facets.begin(), x.facets.end(), label);
    if (it == x.facets.end())
        throw IndexOutOfRange("unknown facet label: " + label);
    return static_cast<std::size_t>(it - x.facets.begin());
}

inline std::size_t ridge_index(CellComplex const &x, std::string const &label) {
    auto it = std::find(x.ridges.begin(), x.ridges.end(), label);
    if (it == x.ridges.end())
        throw IndexOutOfRange("unknown ridge label: " + label);
    return static_cast<std::size_t>(it - x.ridges.begin());
}

inline CellComplex delete_facet(CellComplex const &x, std::size_t f) {
    if (f >= x.num_facets())
        throw IndexOutOfRange("delete_facet index");
    CellComplex out;
    out.name = x.name + "\\" + x.facets[f];
    out.ridges = x.ridges;
    out.facets = x.facets;
    out.facets.erase(out.facets.begin() + static_cast<std::ptrdiff_t>(f));
    out.boundary = x.boundary.delete_column(f);
    return out;
}

// Contraction along facet f through ridge r; requires a unit entry at (r, f).
inline CellComplex contract(CellComplex const &x, std::size_t r, std::size_t f) {
    if (r >= x.num_ridges() || f >= x.num_facets())
        throw IndexOutOfRange("contract indices");
    CellComplex out;
    out.name = x.name + "/" + x.ridges[r] + "*" + x.facets[f];
    out.ridges = x.ridges;
    out.ridges.erase(out.ridges.begin() + static_cast<std::ptrdiff_t>(r));
    out.facets = x.facets;
    out.facets.erase(out.facets.begin() + static_cast<std::ptrdiff_t>(f));
    out.boundary = pivot(x.boundary, r, f); // throws NonUnitPivot when not unit
    return out;
}

inline CellComplex delete_facet(CellComplex const &x, std::string const &facet) {
    return delete_facet(x, facet_index(x, facet));
}

inline CellComplex contract(CellComplex const &x, std::string const &ridge,
                            std::string const &facet) {
    return contract(x, ridge_index(x, ridge), facet_index(x, facet));
}

// Subcomplex X_J: all ridges, facet subset J (indices ascending).
inline CellComplex subcomplex(CellComplex const &x, std::vector<std::size_t> const &j) {
    CellComplex out;
    out.name = x.name + "[";
    out.ridges = x.ridges;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i] >= x.num_facets())
            throw IndexOutOfRange("subcomplex facet index");
        out.facets.push_back(x.facets[j[i]]);
        out.name += (i ? "," : "") + x.facets[j[i]];
    }
    out.name += "]";
    out.boundary = x.boundary.select_columns(j);
    return out;
}

inline std::size_t complex_rank(CellComplex const &x) { return rank(x.boundary); }

inline std::size_t matroid_rank(CellComplex const &x, std::vector<std::size_t> const &j) {
    return rank(x.boundary.select_columns(j));
}

struct LoopsColoops {
    std::vector<std::size_t> loops;
    std::vector<std::size_t> coloops;
};

// Loops are zero columns; coloops are facets whose deletion drops the rank.
inline LoopsColoops loops_and_coloops(CellComplex const &x) {
    LoopsColoops out;
    std::size_t full = complex_rank(x);
    for (std::size_t f = 0; f < x.num_facets(); ++f) {
        if (x.boundary.column_is_zero(f))
            out.loops.push_back(f);
        else if (rank(x.boundary.delete_column(f)) < full)
            out.coloops.push_back(f);
    }
    return out;
}

inline bool has_loops(CellComplex const &x) {
    for (std::size_t f = 0; f < x.num_facets(); ++f)
        if (x.boundary.column_is_zero(f))
            return true;
    return false;
}

inline bool has_coloops(CellComplex const &x) {
    std::size_t full = complex_rank(x);
    for (std::size_t f = 0; f < x.num_facets(); ++f)
        if (!x.boundary.column_is_zero(f) && rank(x.boundary.delete_column(f)) < full)
            return true;
    return false;
}

// Rows form a Z-basis of the integer flow lattice ker(boundary).
inline IntMatrix flow_basis(CellComplex const &x) { return kernel_basis(x.boundary); }

// Rows generate the cut lattice (row space of the boundary).
inline IntMatrix cut_generators(CellComplex const &x) { return x.boundary; }

// Rows form a Z-basis of the tension lattice, the saturation of the cut
// lattice: everything orthogonal to every integer flow.
inline IntMatrix tension_basis(CellComplex const &x) { return kernel_basis(flow_basis(x)); }

// Index of the cut lattice inside the tension lattice: the product of the
// invariant factors of the boundary (the torsion order of H^d(X; Z)).
inline Int cut_tension_index(CellComplex const &x) {
    Int idx = 1;
    for (auto const &f : invariant_factors(x.boundary))
        idx *= f;
    return idx;
}

// |H^d(X; Z_k)| = k^(facets - rank) * gamma(X, k).
inline Int cohomology_order(CellComplex const &x, Int const &k) {
    auto factors = invariant_factors(x.boundary);
    return int_pow(k, static_cast<unsigned long>(x.num_facets() - factors.size())) *
           gamma(factors, k);
}

// --- JSON form: {"name", "ridges", "facets", "boundary"} ---

inline nlohmann::ordered_json to_json(CellComplex const &x) {
    nlohmann::ordered_json j;
    j["name"] = x.name;
    j["ridges"] = x.ridges;
    j["facets"] = x.facets;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < x.num_ridges(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < x.num_facets(); ++c) {
            Int const &v = x.boundary.at(r, c);
            if (v > std::numeric_limits<std::int64_t>::max() ||
                v < std::numeric_limits<std::int64_t>::min())
                throw SizeLimitExceeded("boundary entry exceeds JSON integer range");
            row.push_back(static_cast<std::int64_t>(v));
        }
        rows.push_back(std::move(row));
    }
    j["boundary"] = std::move(rows);
    return j;
}

inline CellComplex complex_from_json(nlohmann::json const &j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("ridges") ||
        !j.contains("facets") || !j.contains("boundary"))
        throw DimensionMismatch("complex JSON must have name, ridges, facets, boundary");
    std::vector<std::string> ridges = j.at("ridges").get<std::vector<std::string>>();
    std::vector<std::string> facets = j.at("facets").get<std::vector<std::string>>();
    auto const &rows = j.at("boundary");
    if (!rows.is_array() || rows.size() != ridges.size())
        throw DimensionMismatch("boundary must have one row per ridge");
    IntMatrix b(ridges.size(), facets.size());
    for (std::size_t r = 0; r < ridges.size(); ++r) {
        auto const &row = rows[r];
        if (!row.is_array() || row.size() != facets.size())
            throw DimensionMismatch("boundary row width must equal the facet count");
        for (std::size_t c = 0; c < facets.size(); ++c) {
            if (!row[c].is_number_integer())
                throw DimensionMismatch("boundary entries must be integers");
            b.at(r, c) = Int(row[c].get<std::int64_t>());
        }
    }
    return from_boundary(j.at("name").get<std::string>(), std::move(ridges), std::move(facets),
                         std::move(b));
}

} // namespace cellcount
