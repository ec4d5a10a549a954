#include "torslat/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace torslat {

FiniteLattice FiniteLattice::from_covers(int n, std::vector<HasseArrow> covers,
                                         std::vector<std::string> names) {
    if (n <= 0) throw Error("lattice must have at least one element");
    FiniteLattice L;
    L.n_ = n;
    L.covers_ = std::move(covers);
    if (names.empty()) {
        names.resize(n);
        for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
    }
    if (static_cast<int>(names.size()) != n) throw Error("names list does not match element count");
    L.names_ = std::move(names);

    L.up_adj_.assign(n, {});
    L.down_adj_.assign(n, {});
    L.cover_of_pair_.assign(static_cast<std::size_t>(n) * n, -1);
    for (std::size_t k = 0; k < L.covers_.size(); ++k) {
        auto [u, v] = L.covers_[k];
        if (u < 0 || u >= n || v < 0 || v >= n) throw Error("cover references an element out of range");
        if (u == v) throw CycleError("cover (" + std::to_string(u) + "," + std::to_string(v) + ") is a self-loop");
        auto& slot = L.cover_of_pair_[static_cast<std::size_t>(u) * n + v];
        if (slot >= 0) throw NotReducedError("duplicate cover (" + std::to_string(u) + "," + std::to_string(v) + ")");
        slot = static_cast<int>(k);
        L.up_adj_[v].push_back(u);
        L.down_adj_[u].push_back(v);
    }
    for (int x = 0; x < n; ++x) {
        std::sort(L.up_adj_[x].begin(), L.up_adj_[x].end());
        std::sort(L.down_adj_[x].begin(), L.down_adj_[x].end());
    }

    // Linear extension, bottom-first (Kahn over arrows upper -> lower).
    std::vector<int> pending(n);
    std::queue<Element> ready;
    for (int x = 0; x < n; ++x) {
        pending[x] = static_cast<int>(L.down_adj_[x].size());
        if (pending[x] == 0) ready.push(x);
    }
    L.order_.reserve(n);
    L.pos_.assign(n, -1);
    while (!ready.empty()) {
        Element x = ready.front();
        ready.pop();
        L.pos_[x] = static_cast<int>(L.order_.size());
        L.order_.push_back(x);
        for (Element u : L.up_adj_[x])
            if (--pending[u] == 0) ready.push(u);
    }
    if (static_cast<int>(L.order_.size()) != n) throw CycleError("covers contain a directed cycle");

    // Down-sets by DP along the extension; heights for rank display.
    L.downt_.assign(n, Bitset(n));
    L.upt_.assign(n, Bitset(n));
    L.height_.assign(n, 0);
    for (Element x : L.order_) {
        L.downt_[x].set(L.pos_[x]);
        for (Element v : L.down_adj_[x]) {
            L.downt_[x] |= L.downt_[v];
            L.height_[x] = std::max(L.height_[x], L.height_[v] + 1);
        }
    }
    for (auto it = L.order_.rbegin(); it != L.order_.rend(); ++it) {
        Element x = *it;
        L.upt_[x].set(L.pos_[x]);
        for (Element u : L.up_adj_[x]) L.upt_[x] |= L.upt_[u];
    }

    // Transitive reduction: no cover may be implied by a longer path.
    for (auto [u, v] : L.covers_) {
        for (Element w : L.down_adj_[u]) {
            if (w != v && L.downt_[w].test(L.pos_[v]))
                throw NotReducedError("cover (" + std::to_string(u) + "," + std::to_string(v) +
                                      ") is transitively implied via " + std::to_string(w));
        }
    }

    // Unique extrema.
    std::vector<Element> mins, maxs;
    for (int x = 0; x < n; ++x) {
        if (L.down_adj_[x].empty()) mins.push_back(x);
        if (L.up_adj_[x].empty()) maxs.push_back(x);
    }
    if (mins.size() != 1)
        throw NotLatticeError("no unique bottom element", mins[0], mins.size() > 1 ? mins[1] : mins[0]);
    if (maxs.size() != 1)
        throw NotLatticeError("no unique top element", maxs[0], maxs.size() > 1 ? maxs[1] : maxs[0]);
    L.bottom_ = mins[0];
    L.top_ = maxs[0];

    // Every pair needs a unique minimal upper bound and maximal lower bound.
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            int p = L.upt_[x].first_common(L.upt_[y]);
            Element z = L.order_[p];  // top is a common upper bound, so p >= 0
            Bitset common = L.upt_[x] & L.upt_[y];
            if (!common.subset_of(L.upt_[z]))
                throw NotLatticeError("elements " + L.names_[x] + " and " + L.names_[y] +
                                          " have no unique minimal upper bound",
                                      x, y);
            int q = -1;
            for (int i = n - 1; i >= 0; --i) {
                if (L.downt_[x].test(i) && L.downt_[y].test(i)) {
                    q = i;
                    break;
                }
            }
            Element w = L.order_[q];
            Bitset commond = L.downt_[x] & L.downt_[y];
            if (!commond.subset_of(L.downt_[w]))
                throw NotLatticeError("elements " + L.names_[x] + " and " + L.names_[y] +
                                          " have no unique maximal lower bound",
                                      x, y);
        }
    }

    if (n <= 1500) L.build_tables();
    return L;
}

void FiniteLattice::build_tables() {
    join_tab_.assign(static_cast<std::size_t>(n_) * n_, -1);
    meet_tab_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int x = 0; x < n_; ++x) {
        for (int y = x; y < n_; ++y) {
            Element j = join(x, y), m = meet(x, y);
            join_tab_[x * n_ + y] = join_tab_[y * n_ + x] = j;
            meet_tab_[x * n_ + y] = meet_tab_[y * n_ + x] = m;
        }
    }
}

int FiniteLattice::cover_index(Element upper, Element lower) const {
    return cover_of_pair_[static_cast<std::size_t>(upper) * n_ + lower];
}

Element FiniteLattice::join(Element x, Element y) const {
    if (leq(x, y)) return y;
    if (leq(y, x)) return x;
    return order_[upt_[x].first_common(upt_[y])];
}

Element FiniteLattice::meet(Element x, Element y) const {
    if (leq(x, y)) return x;
    if (leq(y, x)) return y;
    const auto& a = downt_[x].words();
    const auto& b = downt_[y].words();
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        std::uint64_t c = a[i] & b[i];
        if (c) return order_[i * 64 + 63 - __builtin_clzll(c)];
    }
    return bottom_;  // unreachable: bottom is always common
}

Element FiniteLattice::join_set(std::span<const Element> xs) const {
    Element acc = bottom_;
    for (Element x : xs) acc = join(acc, x);
    return acc;
}

Element FiniteLattice::meet_set(std::span<const Element> xs) const {
    Element acc = top_;
    for (Element x : xs) acc = meet(acc, x);
    return acc;
}

std::vector<Element> FiniteLattice::join_irreducibles() const {
    std::vector<Element> out;
    for (int x = 0; x < n_; ++x)
        if (down_adj_[x].size() == 1) out.push_back(x);
    return out;
}

std::vector<Element> FiniteLattice::meet_irreducibles() const {
    std::vector<Element> out;
    for (int x = 0; x < n_; ++x)
        if (up_adj_[x].size() == 1) out.push_back(x);
    return out;
}

Element FiniteLattice::j_star(Element j) const {
    if (down_adj_[j].size() != 1) throw Error("element is not join-irreducible");
    return down_adj_[j][0];
}

Element FiniteLattice::m_star(Element m) const {
    if (up_adj_[m].size() != 1) throw Error("element is not meet-irreducible");
    return up_adj_[m][0];
}

std::pair<bool, int> FiniteLattice::is_hasse_regular() const {
    int d = hasse_degree(0);
    for (int x = 1; x < n_; ++x)
        if (hasse_degree(x) != d) return {false, -1};
    return {true, d};
}

FiniteLattice::Interval FiniteLattice::interval(Element x, Element y) const {
    if (!leq(x, y))
        throw NotComparableError("interval endpoints are not comparable: " + names_[x] + " !<= " + names_[y]);
    if (x == bottom_ && y == top_) {
        std::vector<Element> all(n_);
        std::iota(all.begin(), all.end(), 0);
        return {*this, std::move(all)};
    }
    std::vector<Element> elems;
    for (int z = 0; z < n_; ++z)
        if (leq(x, z) && leq(z, y)) elems.push_back(z);
    // Covers re-derived from the induced order (covers of L may be lost or
    // gained only at the boundary; re-reducing is the safe general route).
    std::vector<HasseArrow> sub;
    for (std::size_t a = 0; a < elems.size(); ++a) {
        for (std::size_t b = 0; b < elems.size(); ++b) {
            if (a == b) continue;
            Element u = elems[a], v = elems[b];
            if (!leq(v, u)) continue;
            bool is_cover = true;
            for (Element w : elems) {
                if (w != u && w != v && leq(v, w) && leq(w, u)) {
                    is_cover = false;
                    break;
                }
            }
            if (is_cover) sub.push_back({static_cast<Element>(a), static_cast<Element>(b)});
        }
    }
    std::vector<std::string> nm;
    nm.reserve(elems.size());
    for (Element z : elems) nm.push_back(names_[z]);
    return {from_covers(static_cast<int>(elems.size()), std::move(sub), std::move(nm)), std::move(elems)};
}

FiniteLattice FiniteLattice::dualize() const {
    std::vector<HasseArrow> rev;
    rev.reserve(covers_.size());
    for (auto [u, v] : covers_) rev.push_back({v, u});
    return from_covers(n_, std::move(rev), names_);
}

std::optional<FiniteLattice::SdWitness> FiniteLattice::semidistributivity_witness(bool force) const {
    if (!force && n_ > kCubicSizeLimit)
        throw SizeLimitError("semidistributivity scan is O(N^3); refusing N=" + std::to_string(n_) +
                             " without force");
    // Expected runtime: ~instant for N<=120, seconds around N~700, and only
    // with force beyond kCubicSizeLimit.
    for (Element x = 0; x < n_; ++x) {
        for (Element y = 0; y < n_; ++y) {
            Element mxy = meet_fast(x, y), jxy = join_fast(x, y);
            for (Element z = 0; z < n_; ++z) {
                if (meet_fast(x, z) == mxy && meet_fast(x, join_fast(y, z)) != mxy)
                    return SdWitness{x, y, z, false};
                if (join_fast(x, z) == jxy && join_fast(x, meet_fast(y, z)) != jxy)
                    return SdWitness{x, y, z, true};
            }
        }
    }
    return std::nullopt;
}

bool FiniteLattice::polygon_chains(Element lo, Element hi, std::vector<Element>& chain_a,
                                   std::vector<Element>& chain_b) const {
    chain_a.clear();
    chain_b.clear();
    std::vector<Element> interior;
    for (int z = 0; z < n_; ++z)
        if (z != lo && z != hi && leq(lo, z) && leq(z, hi)) interior.push_back(z);
    if (interior.empty()) return false;
    // Split by comparability components; a polygon interior must give exactly
    // two components, each totally ordered.
    std::vector<int> comp(interior.size(), -1);
    int ncomp = 0;
    for (std::size_t i = 0; i < interior.size(); ++i) {
        if (comp[i] >= 0) continue;
        std::vector<std::size_t> stack{i};
        comp[i] = ncomp;
        while (!stack.empty()) {
            std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < interior.size(); ++b) {
                if (comp[b] >= 0) continue;
                if (leq(interior[a], interior[b]) || leq(interior[b], interior[a])) {
                    comp[b] = ncomp;
                    stack.push_back(b);
                }
            }
        }
        ++ncomp;
    }
    if (ncomp != 2) return false;
    for (std::size_t i = 0; i < interior.size(); ++i)
        (comp[i] == 0 ? chain_a : chain_b).push_back(interior[i]);
    auto is_chain = [&](std::vector<Element>& c) {
        std::sort(c.begin(), c.end(), [&](Element a, Element b) { return pos_[a] < pos_[b]; });
        for (std::size_t i = 0; i + 1 < c.size(); ++i)
            if (!leq(c[i], c[i + 1])) return false;
        return true;
    };
    return is_chain(chain_a) && is_chain(chain_b);
}

FiniteLattice::PolygonalityReport FiniteLattice::polygonality() const {
    PolygonalityReport rep;
    rep.polygonal = true;
    std::set<std::pair<Element, Element>> seen;
    std::vector<Element> ca, cb;
    auto check_interval = [&](Element lo, Element hi, Element w1, Element w2) {
        if (!polygon_chains(lo, hi, ca, cb)) {
            if (rep.polygonal) {
                rep.polygonal = false;
                rep.witness_a = w1;
                rep.witness_b = w2;
            }
            return;
        }
        seen.insert({lo, hi});
    };
    for (int x = 0; x < n_; ++x) {
        const auto& ups = up_adj_[x];
        for (std::size_t i = 0; i < ups.size(); ++i)
            for (std::size_t j = i + 1; j < ups.size(); ++j)
                check_interval(x, join(ups[i], ups[j]), ups[i], ups[j]);
        const auto& downs = down_adj_[x];
        for (std::size_t i = 0; i < downs.size(); ++i)
            for (std::size_t j = i + 1; j < downs.size(); ++j)
                check_interval(meet(downs[i], downs[j]), x, downs[i], downs[j]);
    }
    rep.polygons.assign(seen.begin(), seen.end());
    return rep;
}

int LabelledHasse::label_id(const std::string& name) const {
    for (std::size_t i = 0; i < label_names.size(); ++i)
        if (label_names[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<int> LabelledHasse::covers_with_label(int label) const {
    std::vector<int> out;
    for (std::size_t k = 0; k < arrow_label.size(); ++k)
        if (arrow_label[k] == label) out.push_back(static_cast<int>(k));
    return out;
}

std::vector<HasseArrow> Poset::hasse() const {
    std::vector<HasseArrow> arrows;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v || !leq(v, u)) continue;
            bool cover = true;
            for (int w = 0; w < n && cover; ++w)
                if (w != u && w != v && leq(v, w) && leq(w, u)) cover = false;
            if (cover) arrows.push_back({u, v});
        }
    }
    return arrows;
}

std::vector<Bitset> Poset::down_sets(std::size_t limit) const {
    // Grow one element at a time in a fixed linear extension; a subset of a
    // processed prefix is a down-set iff adding x keeps all lower covers in.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return below[a].count() < below[b].count(); });
    std::vector<Bitset> out{Bitset(n)};
    for (int x : order) {
        std::size_t sz = out.size();
        for (std::size_t i = 0; i < sz; ++i) {
            Bitset cand = out[i];
            bool ok = true;
            below[x].for_each([&](int y) {
                if (y != x && !cand.test(y)) ok = false;
            });
            if (ok) {
                cand.set(x);
                out.push_back(cand);
                if (out.size() > limit) throw SizeLimitError("down-set enumeration exceeded limit");
            }
        }
    }
    return out;
}

namespace {

bool try_extend(const FiniteLattice& a, const FiniteLattice& b, std::vector<int>& map_ab,
                std::vector<int>& map_ba, Element next) {
    int n = a.size();
    if (next == n) return true;
    for (Element cand = 0; cand < n; ++cand) {
        if (map_ba[cand] >= 0) continue;
        if (a.height(next) != b.height(cand)) continue;
        if (a.upper_covers(next).size() != b.upper_covers(cand).size()) continue;
        if (a.lower_covers(next).size() != b.lower_covers(cand).size()) continue;
        bool ok = true;
        for (Element u : a.upper_covers(next))
            if (map_ab[u] >= 0 && !b.covers_pair(map_ab[u], cand)) ok = false;
        for (Element v : a.lower_covers(next))
            if (map_ab[v] >= 0 && !b.covers_pair(cand, map_ab[v])) ok = false;
        if (!ok) continue;
        map_ab[next] = cand;
        map_ba[cand] = next;
        if (try_extend(a, b, map_ab, map_ba, next + 1)) return true;
        map_ab[next] = -1;
        map_ba[cand] = -1;
    }
    return false;
}

}  // namespace

bool hasse_isomorphic(const FiniteLattice& a, const FiniteLattice& b, std::vector<int>* mapping) {
    if (a.size() != b.size() || a.covers().size() != b.covers().size()) return false;
    std::vector<int> map_ab(a.size(), -1), map_ba(b.size(), -1);
    if (!try_extend(a, b, map_ab, map_ba, 0)) return false;
    if (mapping) *mapping = map_ab;
    return true;
}

}  // namespace torslat
