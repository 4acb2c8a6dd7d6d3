/**
 * Finite abstract simplicial complexes and their combinatorial services:
 * faces, links, open stars, barycentric subdivision, and the compactly
 * supported Euler characteristic.  Strata are open simplices; a simplex is a
 * sorted duplicate-free vector of integer vertex ids.
 *
 * All values are immutable after construction and safe to share read-only.
 */
#pragma once

#include "charcyc/errors.hpp"
#include "charcyc/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace charcyc {

using Vertex = int;
using Simplex = std::vector<Vertex>;  // sorted, unique, nonempty

/// Canonicalizes a vertex list into a simplex.  Rejects duplicates.
inline Simplex make_simplex(std::vector<Vertex> verts) {
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
        throw InvalidComplex("simplex has a repeated vertex");
    if (verts.empty()) throw InvalidComplex("empty simplex");
    return verts;
}

inline int simplex_dim(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

inline std::string simplex_to_string(const Simplex& s) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << '}';
    return os.str();
}

/// All nonempty proper and improper subsets of s, i.e. its closed faces.
inline std::vector<Simplex> closed_faces(const Simplex& s) {
    std::vector<Simplex> out;
    const std::size_t n = s.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) f.push_back(s[i]);
        out.push_back(std::move(f));
    }
    return out;
}

inline bool is_subset(const Simplex& a, const Simplex& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool are_disjoint(const Simplex& a, const Simplex& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else return false;
    }
    return true;
}

/// Union of two disjoint simplices (the join on vertex sets).
inline Simplex simplex_join(const Simplex& a, const Simplex& b) {
    Simplex out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/**
 * A finite abstract simplicial complex.  Invariants enforced at
 * construction: the simplex set is face-closed and every vertex occurring in
 * a simplex is itself a simplex.
 */
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    /// Builds from an explicit simplex set; throws InvalidComplex if the set
    /// is not face-closed.
    explicit SimplicialComplex(std::set<Simplex> simplices) : simplices_(std::move(simplices)) {
        for (const Simplex& s : simplices_) {
            if (s.empty()) throw InvalidComplex("empty simplex in complex");
            if (!std::is_sorted(s.begin(), s.end()) ||
                std::adjacent_find(s.begin(), s.end()) != s.end())
                throw InvalidComplex("non-canonical simplex " + simplex_to_string(s));
            for (const Simplex& f : closed_faces(s)) {
                if (!simplices_.count(f))
                    throw InvalidComplex("missing face " + simplex_to_string(f) + " of " +
                                         simplex_to_string(s));
            }
            dim_ = std::max(dim_, simplex_dim(s));
        }
    }

    /// Builds the face closure of a list of (maximal) simplices.
    static SimplicialComplex from_maximal(const std::vector<Simplex>& maximal) {
        std::set<Simplex> all;
        for (const Simplex& raw : maximal) {
            Simplex s = make_simplex(raw);
            for (Simplex& f : closed_faces(s)) all.insert(std::move(f));
        }
        SimplicialComplex k;
        k.simplices_ = std::move(all);
        for (const Simplex& s : k.simplices_) k.dim_ = std::max(k.dim_, simplex_dim(s));
        return k;
    }

    const std::set<Simplex>& simplices() const { return simplices_; }
    bool contains(const Simplex& s) const { return simplices_.count(s) != 0; }
    int dim() const { return dim_; }
    bool empty() const { return simplices_.empty(); }
    std::size_t size() const { return simplices_.size(); }

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        for (const Simplex& s : simplices_)
            if (s.size() == 1) out.push_back(s[0]);
        return out;  // sorted: set order on singletons is vertex order
    }

    std::vector<Simplex> simplices_of_dim(int d) const {
        std::vector<Simplex> out;
        for (const Simplex& s : simplices_)
            if (simplex_dim(s) == d) out.push_back(s);
        return out;
    }

    /// Counts simplices per dimension, f-vector style.
    std::vector<std::size_t> face_counts() const {
        std::vector<std::size_t> counts(static_cast<std::size_t>(dim_ + 1), 0);
        for (const Simplex& s : simplices_) ++counts[static_cast<std::size_t>(simplex_dim(s))];
        return counts;
    }

    /// All cofaces of s, including s itself.
    std::vector<Simplex> cofaces(const Simplex& s) const {
        require(s);
        std::vector<Simplex> out;
        for (const Simplex& t : simplices_)
            if (is_subset(s, t)) out.push_back(t);
        return out;
    }

    void require(const Simplex& s) const {
        if (!contains(s)) throw SimplexNotFound("simplex " + simplex_to_string(s) + " not in complex");
    }

    bool operator==(const SimplicialComplex& other) const { return simplices_ == other.simplices_; }
    bool operator!=(const SimplicialComplex& other) const { return !(*this == other); }

  private:
    std::set<Simplex> simplices_;
    int dim_ = -1;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

inline ComplexPtr make_complex(const std::vector<Simplex>& maximal) {
    return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_maximal(maximal));
}

/// True when two handles denote the same complex (identity or structural).
inline bool same_complex(const ComplexPtr& a, const ComplexPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

/**
 * A union of open simplices, represented by its member simplex set.  The set
 * must be coface-closed: that is exactly openness of the union of open
 * simplices in the realization.
 */
class OpenSet {
  public:
    OpenSet(ComplexPtr complex, std::set<Simplex> members)
        : complex_(std::move(complex)), members_(std::move(members)) {
        for (const Simplex& s : members_) {
            complex_->require(s);
            for (const Simplex& t : complex_->cofaces(s))
                if (!members_.count(t))
                    throw NotOpen("coface " + simplex_to_string(t) + " of member " +
                                  simplex_to_string(s) + " is missing");
        }
    }

    static OpenSet whole(ComplexPtr complex) {
        std::set<Simplex> all = complex->simplices();
        return OpenSet(std::move(complex), std::move(all));
    }

    const ComplexPtr& complex() const { return complex_; }
    const std::set<Simplex>& members() const { return members_; }
    bool contains(const Simplex& s) const { return members_.count(s) != 0; }

    OpenSet set_union(const OpenSet& other) const {
        check_same(other);
        std::set<Simplex> m = members_;
        m.insert(other.members_.begin(), other.members_.end());
        return OpenSet(complex_, std::move(m));
    }

    OpenSet set_intersection(const OpenSet& other) const {
        check_same(other);
        std::set<Simplex> m;
        for (const Simplex& s : members_)
            if (other.contains(s)) m.insert(s);
        return OpenSet(complex_, std::move(m));  // intersection of coface-closed is coface-closed
    }

    bool covers_complex() const { return members_.size() == complex_->size(); }

  private:
    void check_same(const OpenSet& other) const {
        if (!same_complex(complex_, other.complex_))
            throw ComplexMismatch("open sets live on different complexes");
    }

    ComplexPtr complex_;
    std::set<Simplex> members_;
};

/// The open star of s: all cofaces of s, including s.  Coface-closed.
inline OpenSet star_open(const ComplexPtr& complex, const Simplex& s) {
    complex->require(s);
    std::set<Simplex> members;
    for (Simplex& t : complex->cofaces(s)) members.insert(std::move(t));
    return OpenSet(complex, std::move(members));
}

/// Union of open stars of the given simplices.
inline OpenSet star_open_union(const ComplexPtr& complex, const std::vector<Simplex>& seeds) {
    std::set<Simplex> members;
    for (const Simplex& s : seeds) {
        complex->require(s);
        for (Simplex& t : complex->cofaces(s)) members.insert(std::move(t));
    }
    return OpenSet(complex, std::move(members));
}

/// The link of s: all t disjoint from s with t + s in the complex.
inline SimplicialComplex link(const SimplicialComplex& complex, const Simplex& s) {
    complex.require(s);
    std::set<Simplex> members;
    for (const Simplex& t : complex.simplices()) {
        if (!are_disjoint(s, t)) continue;
        if (complex.contains(simplex_join(s, t))) members.insert(t);
    }
    return SimplicialComplex(std::move(members));  // face-closed: faces of t also join into complex
}

/// Vertices of the link of s, sorted.
inline std::vector<Vertex> link_vertices(const SimplicialComplex& complex, const Simplex& s) {
    complex.require(s);
    std::vector<Vertex> out;
    for (const Simplex& v : complex.simplices()) {
        if (v.size() != 1 || std::binary_search(s.begin(), s.end(), v[0])) continue;
        if (complex.contains(simplex_join(s, v))) out.push_back(v[0]);
    }
    return out;
}

/**
 * Compactly supported Euler characteristic of a locally closed union of open
 * simplices: the alternating count sum (-1)^dim over the set.
 */
template <typename SimplexRange>
Rational euler_char_cc(const SimplexRange& simplices) {
    Rational chi = 0;
    for (const Simplex& s : simplices) chi += (simplex_dim(s) % 2 == 0) ? 1 : -1;
    return chi;
}

inline Rational euler_char_cc(const SimplicialComplex& complex) {
    return euler_char_cc(complex.simplices());
}

/**
 * Barycentric subdivision data: the target is the flag complex of the
 * source, target vertices are source simplices, and the carrier of a target
 * simplex (a flag) is the maximal source simplex in the flag.  Carrier is
 * monotone under coface and its fibers partition the target.
 */
class SubdivisionMap {
  public:
    SubdivisionMap(ComplexPtr source, ComplexPtr target, std::map<Simplex, Simplex> carrier)
        : source_(std::move(source)), target_(std::move(target)), carrier_(std::move(carrier)) {}

    /// The identity refinement (used as the zero-round base case).
    static SubdivisionMap identity(ComplexPtr complex) {
        std::map<Simplex, Simplex> carrier;
        for (const Simplex& s : complex->simplices()) carrier.emplace(s, s);
        return SubdivisionMap(complex, complex, std::move(carrier));
    }

    const ComplexPtr& source() const { return source_; }
    const ComplexPtr& target() const { return target_; }

    const Simplex& carrier(const Simplex& target_simplex) const {
        auto it = carrier_.find(target_simplex);
        if (it == carrier_.end())
            throw SimplexNotFound("no carrier for " + simplex_to_string(target_simplex));
        return it->second;
    }

    const std::map<Simplex, Simplex>& carrier_map() const { return carrier_; }

    /// Composition with a further refinement of this map's target.
    SubdivisionMap then(const SubdivisionMap& finer) const {
        if (!same_complex(target_, finer.source_))
            throw ComplexMismatch("refinements do not chain");
        std::map<Simplex, Simplex> carrier;
        for (const auto& [t, mid] : finer.carrier_) carrier.emplace(t, this->carrier(mid));
        return SubdivisionMap(source_, finer.target_, std::move(carrier));
    }

    /// Transports an open set to the refined complex: a target simplex is a
    /// member exactly when its carrier is.  Realizations agree.
    OpenSet transport_open(const OpenSet& open) const {
        if (!same_complex(open.complex(), source_))
            throw ComplexMismatch("open set does not live on the refinement source");
        std::set<Simplex> members;
        for (const auto& [t, c] : carrier_)
            if (open.contains(c)) members.insert(t);
        return OpenSet(target_, std::move(members));
    }

  private:
    ComplexPtr source_;
    ComplexPtr target_;
    std::map<Simplex, Simplex> carrier_;  // target simplex -> source simplex
};

/**
 * Barycentric subdivision.  Target vertices are indexed by source simplices
 * in (dimension, lexicographic) order, so ids increase along flags; the
 * carrier of a flag is then the source simplex of its largest vertex id.
 */
inline SubdivisionMap barycentric_subdivision(const ComplexPtr& complex) {
    std::vector<Simplex> by_rank(complex->simplices().begin(), complex->simplices().end());
    std::sort(by_rank.begin(), by_rank.end(), [](const Simplex& a, const Simplex& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::map<Simplex, Vertex> id_of;
    for (std::size_t i = 0; i < by_rank.size(); ++i) id_of.emplace(by_rank[i], static_cast<Vertex>(i));

    // Enumerate flags: chains of source simplices totally ordered by
    // inclusion.  A chain with maximum i extends a chain ending at a proper
    // face of i (or is the singleton {i}).
    std::set<Simplex> target_simplices;
    std::map<Simplex, Simplex> carrier;
    std::vector<std::vector<Simplex>> flags_ending(by_rank.size());
    for (std::size_t i = 0; i < by_rank.size(); ++i) {
        std::vector<Simplex>& flags = flags_ending[i];
        flags.push_back(Simplex{static_cast<Vertex>(i)});
        for (std::size_t j = 0; j < i; ++j) {
            if (by_rank[j].size() >= by_rank[i].size()) continue;
            if (!is_subset(by_rank[j], by_rank[i])) continue;
            for (const Simplex& t : flags_ending[j]) {
                Simplex extended = t;
                extended.push_back(static_cast<Vertex>(i));
                flags.push_back(std::move(extended));
            }
        }
        for (const Simplex& f : flags) {
            carrier[f] = by_rank[i];
            target_simplices.insert(f);
        }
    }
    auto target = std::make_shared<const SimplicialComplex>(SimplicialComplex(std::move(target_simplices)));
    return SubdivisionMap(complex, target, std::move(carrier));
}

/**
 * Necessary closed-n-manifold conditions: every (n-1)-simplex has exactly
 * two n-cofaces, and every simplex's link has the Euler characteristic of
 * the sphere of complementary dimension.  These are necessary conditions
 * only; sphere recognition is out of reach.
 */
struct ManifoldReport {
    int n = 0;
    bool facet_condition = true;
    bool link_condition = true;
    std::vector<std::pair<Simplex, int>> facet_failures;                     // facet, coface count
    std::vector<std::pair<Simplex, std::pair<Rational, Rational>>> link_failures;  // simplex, (got, want)

    bool pass() const { return facet_condition && link_condition; }
};

inline ManifoldReport manifold_report(const SimplicialComplex& complex, int n) {
    ManifoldReport rep;
    rep.n = n;
    for (const Simplex& s : complex.simplices()) {
        if (simplex_dim(s) == n - 1) {
            int count = 0;
            for (const Simplex& t : complex.simplices())
                if (simplex_dim(t) == n && is_subset(s, t)) ++count;
            if (count != 2) {
                rep.facet_condition = false;
                rep.facet_failures.emplace_back(s, count);
            }
        }
        // chi(S^k) = 1 + (-1)^k for k >= 0; the empty link has chi 0.
        const int k = n - simplex_dim(s) - 1;
        const Rational want = (k < 0) ? Rational(0) : Rational(1 + ((k % 2 == 0) ? 1 : -1));
        const Rational got = euler_char_cc(link(complex, s));
        if (got != want) {
            rep.link_condition = false;
            rep.link_failures.emplace_back(s, std::make_pair(got, want));
        }
    }
    return rep;
}

}  // namespace charcyc
