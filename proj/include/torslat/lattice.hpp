#pragma once

#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torslat/bitset.hpp"

namespace torslat {

using Element = int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CycleError : Error {
    using Error::Error;
};
struct NotReducedError : Error {
    using Error::Error;
};
struct NotLatticeError : Error {
    NotLatticeError(const std::string& msg, Element x, Element y) : Error(msg), x(x), y(y) {}
    Element x, y;
};
struct NotComparableError : Error {
    using Error::Error;
};
struct SizeLimitError : Error {
    using Error::Error;
};
struct NotPolygonalError : Error {
    using Error::Error;
};

/// Directed Hasse arrow, pointing from the larger element down to the smaller.
struct HasseArrow {
    Element upper;
    Element lower;
    bool operator==(const HasseArrow&) const = default;
    auto operator<=>(const HasseArrow&) const = default;
};

/// Raising N^3 scans above this size needs an explicit opt-in.
inline constexpr int kCubicSizeLimit = 5040;

/// A finite lattice on elements 0..n-1, given by its cover relation.
///
/// Construction validates everything eagerly: the covers must be acyclic,
/// transitively reduced, and every pair of elements must have a unique
/// minimal upper bound and maximal lower bound. Ingested files are not
/// trusted to be lattices, so failures carry a witness.
///
/// Order rows are kept as bitsets indexed by a fixed linear extension, which
/// makes join(x,y) a scan for the first common up-set bit plus one subset
/// test. Instances are immutable after construction and safe to share across
/// threads.
class FiniteLattice {
public:
    static FiniteLattice from_covers(int n, std::vector<HasseArrow> covers,
                                     std::vector<std::string> names = {});

    int size() const { return n_; }
    const std::vector<HasseArrow>& covers() const { return covers_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Element x) const { return names_[x]; }

    Element top() const { return top_; }
    Element bottom() const { return bottom_; }

    bool leq(Element x, Element y) const { return downt_[y].test(pos_[x]); }
    bool covers_pair(Element upper, Element lower) const { return cover_index(upper, lower) >= 0; }
    /// Index into covers() of the arrow upper -> lower, or -1.
    int cover_index(Element upper, Element lower) const;

    const std::vector<Element>& upper_covers(Element x) const { return up_adj_[x]; }
    const std::vector<Element>& lower_covers(Element x) const { return down_adj_[x]; }

    Element join(Element x, Element y) const;
    Element meet(Element x, Element y) const;
    Element join_set(std::span<const Element> xs) const;  // empty set -> bottom
    Element meet_set(std::span<const Element> xs) const;  // empty set -> top

    /// Elements covering exactly one element (excludes the bottom).
    std::vector<Element> join_irreducibles() const;
    /// Elements covered by exactly one element (excludes the top).
    std::vector<Element> meet_irreducibles() const;
    Element j_star(Element j) const;  // the unique element covered by a join-irreducible
    Element m_star(Element m) const;  // the unique element covering a meet-irreducible

    /// Undirected Hasse degree.
    int hasse_degree(Element x) const {
        return static_cast<int>(up_adj_[x].size() + down_adj_[x].size());
    }
    /// (regular?, common degree). Degree is meaningful only when regular.
    std::pair<bool, int> is_hasse_regular() const;

    /// Length of the longest chain from the bottom up to x.
    int height(Element x) const { return height_[x]; }

    struct Interval {
        FiniteLattice lattice;
        std::vector<Element> elements;  // sub-lattice index -> original element
    };
    Interval interval(Element x, Element y) const;  // throws NotComparableError

    /// Lattice with all covers reversed.
    FiniteLattice dualize() const;

    struct SdWitness {
        Element x, y, z;
        bool join_side;  // witness violates the join-semidistributive law
    };
    /// Semidistributivity check, brute force over all triples.
    /// The witness is present exactly when the check fails.
    std::optional<SdWitness> semidistributivity_witness(bool force = false) const;
    bool is_semidistributive(bool force = false) const {
        return !semidistributivity_witness(force).has_value();
    }

    struct PolygonalityReport {
        bool polygonal;
        Element witness_a = -1, witness_b = -1;             // offending cover pair endpoints
        std::vector<std::pair<Element, Element>> polygons;  // polygons as intervals [lo, hi]
    };
    PolygonalityReport polygonality() const;
    bool is_polygonal() const { return polygonality().polygonal; }
    /// All polygons [lo, hi], from both cover-pair conditions, deduplicated.
    std::vector<std::pair<Element, Element>> polygons() const { return polygonality().polygons; }

    /// True when [lo, hi] has an interior consisting of exactly two disjoint
    /// nonempty chains; fills the two chains (each sorted ascending).
    bool polygon_chains(Element lo, Element hi, std::vector<Element>& chain_a,
                        std::vector<Element>& chain_b) const;

    /// Up-set / down-set rows in linear-extension coordinates (see pos()).
    const Bitset& upset_row(Element x) const { return upt_[x]; }
    const Bitset& downset_row(Element x) const { return downt_[x]; }
    int pos(Element x) const { return pos_[x]; }
    Element element_at_pos(int p) const { return order_[p]; }

    /// Precomputed n*n join/meet tables; built only for small lattices.
    bool has_tables() const { return !join_tab_.empty(); }
    Element join_fast(Element x, Element y) const {
        return join_tab_.empty() ? join(x, y) : join_tab_[x * n_ + y];
    }
    Element meet_fast(Element x, Element y) const {
        return meet_tab_.empty() ? meet(x, y) : meet_tab_[x * n_ + y];
    }

private:
    FiniteLattice() = default;
    void build_tables();

    int n_ = 0;
    std::vector<HasseArrow> covers_;
    std::vector<std::string> names_;
    std::vector<std::vector<Element>> up_adj_, down_adj_;
    std::vector<int> cover_of_pair_;  // dense map (upper * n + lower) -> cover index; -1
    std::vector<Bitset> upt_, downt_; // rows in linear-extension coordinates
    std::vector<int> pos_;            // element -> position in the linear extension
    std::vector<Element> order_;      // position -> element
    std::vector<int> height_;
    Element top_ = -1, bottom_ = -1;
    std::vector<Element> join_tab_, meet_tab_;
};

/// Hasse quiver of a finite lattice together with one label per arrow.
/// Labels are dense ids with display names; attribute flags are free-form
/// strings attached by fixtures (e.g. survival under a named ideal).
struct LabelledHasse {
    FiniteLattice lattice;
    std::vector<int> arrow_label;               // per cover index
    std::vector<std::string> label_names;       // label id -> name
    std::vector<std::set<std::string>> label_attrs;

    bool labelled() const { return !arrow_label.empty(); }
    int n_labels() const { return static_cast<int>(label_names.size()); }
    int label_of(int cover_idx) const { return arrow_label[cover_idx]; }
    int label_id(const std::string& name) const;  // -1 if absent

    /// Covers carrying the given label.
    std::vector<int> covers_with_label(int label) const;
};

/// A plain finite poset (not necessarily a lattice); used for forcing
/// quivers on bricks and for the subpath order on oriented paths.
struct Poset {
    int n = 0;
    std::vector<Bitset> below;  // below[x] = {y : y <= x}, indexed by element
    std::vector<std::string> names;

    bool leq(int x, int y) const { return below[y].test(x); }
    /// Hasse arrows (upper, lower) after transitive reduction.
    std::vector<HasseArrow> hasse() const;
    /// All down-closed subsets; guarded by a result-count limit.
    std::vector<Bitset> down_sets(std::size_t limit = 1u << 22) const;
};

/// Backtracking isomorphism test on Hasse quivers (directed covers).
/// Intended for the small paper fixtures; optionally returns a mapping.
bool hasse_isomorphic(const FiniteLattice& a, const FiniteLattice& b,
                      std::vector<int>* mapping = nullptr);

}  // namespace torslat
