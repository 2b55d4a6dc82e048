#include "groupoids/setcore.hpp"

#include <algorithm>
#include <numeric>

namespace setcore {

FinSet::FinSet() : FinSet(std::vector<std::string>{}) {}

FinSet::FinSet(std::vector<std::string> labels) {
    auto data = std::make_shared<Data>();
    data->index.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = data->index.emplace(labels[i], static_cast<int>(i));
        if (!inserted)
            throw boundary_error("duplicate label '" + labels[i] + "' in finite set");
    }
    data->labels = std::move(labels);
    data_ = std::move(data);
}

std::optional<int> FinSet::find(std::string_view label) const {
    auto it = data_->index.find(std::string(label));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
}

int FinSet::index_of(std::string_view label) const {
    auto idx = find(label);
    if (!idx)
        throw boundary_error("label '" + std::string(label) + "' not in set " + describe());
    return *idx;
}

bool FinSet::operator==(const FinSet& other) const {
    return data_ == other.data_ || data_->labels == other.data_->labels;
}

std::string FinSet::describe() const {
    std::string out = "{";
    const auto& ls = data_->labels;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (i) out += ", ";
        if (i == 8 && ls.size() > 9) {
            out += "... " + std::to_string(ls.size()) + " elements";
            break;
        }
        out += ls[i];
    }
    out += "}";
    return out;
}

FinMap::FinMap(FinSet dom, FinSet cod, std::vector<int> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    if (table_.size() != dom_.size())
        throw boundary_error("map table size " + std::to_string(table_.size()) +
                             " does not match domain " + dom_.describe());
    const int n = static_cast<int>(cod_.size());
    for (int v : table_)
        if (v < 0 || v >= n)
            throw boundary_error("map table entry out of range for codomain " + cod_.describe());
}

bool FinMap::operator==(const FinMap& other) const {
    return table_ == other.table_ && dom_ == other.dom_ && cod_ == other.cod_;
}

FinMap compose(const FinMap& f, const FinMap& g) {
    if (f.cod() != g.dom())
        throw boundary_error("cannot compose: codomain " + f.cod().describe() +
                             " differs from domain " + g.dom().describe());
    std::vector<int> table(f.dom().size());
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = g(f(static_cast<int>(i)));
    return FinMap(f.dom(), g.cod(), std::move(table));
}

FinMap identity(const FinSet& a) {
    std::vector<int> table(a.size());
    std::iota(table.begin(), table.end(), 0);
    return FinMap(a, a, std::move(table));
}

bool is_mono(const FinMap& f) {
    std::vector<char> seen(f.cod().size(), 0);
    for (int v : f.table()) {
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

bool is_regular_epi(const FinMap& f) {
    std::vector<char> seen(f.cod().size(), 0);
    for (int v : f.table()) seen[static_cast<std::size_t>(v)] = 1;
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool is_iso(const FinMap& f) {
    return f.dom().size() == f.cod().size() && is_mono(f);
}

std::string pair_label(std::string_view a, std::string_view b) {
    std::string out;
    out.reserve(a.size() + b.size() + 3);
    out += '(';
    out += a;
    out += ',';
    out += b;
    out += ')';
    return out;
}

ProductResult product(const FinSet& a, const FinSet& b) {
    std::vector<std::string> labels;
    std::vector<int> t1, t2;
    labels.reserve(a.size() * b.size());
    t1.reserve(labels.capacity());
    t2.reserve(labels.capacity());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            labels.push_back(pair_label(a.label(static_cast<int>(i)), b.label(static_cast<int>(j))));
            t1.push_back(static_cast<int>(i));
            t2.push_back(static_cast<int>(j));
        }
    FinSet set(std::move(labels));
    return {set, FinMap(set, a, std::move(t1)), FinMap(set, b, std::move(t2))};
}

PullbackResult pullback(const FinMap& f, const FinMap& g) {
    if (f.cod() != g.cod())
        throw boundary_error("pullback requires equal codomains: " + f.cod().describe() +
                             " vs " + g.cod().describe());
    const auto& a = f.dom();
    const auto& b = g.dom();
    std::vector<std::string> labels;
    std::vector<int> t1, t2;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (f(static_cast<int>(i)) == g(static_cast<int>(j))) {
                labels.push_back(pair_label(a.label(static_cast<int>(i)), b.label(static_cast<int>(j))));
                t1.push_back(static_cast<int>(i));
                t2.push_back(static_cast<int>(j));
            }
    FinSet set(std::move(labels));
    return {set, FinMap(set, a, std::move(t1)), FinMap(set, b, std::move(t2))};
}

EqualizerResult equalizer(const FinMap& f, const FinMap& g) {
    if (f.dom() != g.dom() || f.cod() != g.cod())
        throw boundary_error("equalizer requires parallel maps: " + f.dom().describe() + " -> " +
                             f.cod().describe() + " vs " + g.dom().describe() + " -> " +
                             g.cod().describe());
    std::vector<std::string> labels;
    std::vector<int> table;
    for (std::size_t i = 0; i < f.dom().size(); ++i)
        if (f(static_cast<int>(i)) == g(static_cast<int>(i))) {
            labels.push_back(f.dom().label(static_cast<int>(i)));
            table.push_back(static_cast<int>(i));
        }
    FinSet set(std::move(labels));
    return {set, FinMap(set, f.dom(), std::move(table))};
}

namespace {

// Plain union-find with path halving; small and deterministic.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] = parent_[parent_[static_cast<std::size_t>(x)]];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void merge(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        if (x > y) std::swap(x, y);  // keep the least index as representative
        parent_[static_cast<std::size_t>(y)] = x;
    }
private:
    std::vector<int> parent_;
};

}  // namespace

CoequalizerResult coequalizer(const FinMap& f, const FinMap& g) {
    if (f.dom() != g.dom() || f.cod() != g.cod())
        throw boundary_error("coequalizer requires parallel maps: " + f.dom().describe() +
                             " -> " + f.cod().describe() + " vs " + g.dom().describe() + " -> " +
                             g.cod().describe());
    const auto& b = f.cod();
    UnionFind uf(b.size());
    for (std::size_t i = 0; i < f.dom().size(); ++i)
        uf.merge(f(static_cast<int>(i)), g(static_cast<int>(i)));

    // Classes ordered (and labeled) by their least-index member.
    std::vector<int> class_of(b.size(), -1);
    std::vector<std::string> labels;
    std::vector<int> table(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        int root = uf.find(static_cast<int>(i));
        if (class_of[static_cast<std::size_t>(root)] < 0) {
            class_of[static_cast<std::size_t>(root)] = static_cast<int>(labels.size());
            labels.push_back(b.label(root));
        }
        table[i] = class_of[static_cast<std::size_t>(root)];
    }
    FinSet set(std::move(labels));
    return {set, FinMap(b, set, std::move(table))};
}

PullbackResult kernel_pair(const FinMap& f) {
    return pullback(f, f);
}

ImageFactorization image_factorize(const FinMap& f) {
    std::vector<int> image_index(f.cod().size(), -1);
    std::vector<std::string> labels;
    std::vector<int> mono_table;
    std::vector<int> repi_table(f.dom().size());
    for (std::size_t i = 0; i < f.dom().size(); ++i) {
        int v = f(static_cast<int>(i));
        if (image_index[static_cast<std::size_t>(v)] < 0) {
            image_index[static_cast<std::size_t>(v)] = static_cast<int>(labels.size());
            labels.push_back(f.cod().label(v));
            mono_table.push_back(v);
        }
        repi_table[i] = image_index[static_cast<std::size_t>(v)];
    }
    FinSet image(std::move(labels));
    return {FinMap(f.dom(), image, std::move(repi_table)),
            FinMap(image, f.cod(), std::move(mono_table))};
}

bool is_jointly_monic(const FinMap& f, const FinMap& g) {
    if (f.dom() != g.dom())
        throw boundary_error("jointly-monic check requires equal domains: " + f.dom().describe() +
                             " vs " + g.dom().describe());
    const std::size_t m = g.cod().size();
    std::vector<char> seen(f.cod().size() * m, 0);
    for (std::size_t i = 0; i < f.dom().size(); ++i) {
        std::size_t key = static_cast<std::size_t>(f(static_cast<int>(i))) * m +
                          static_cast<std::size_t>(g(static_cast<int>(i)));
        if (seen[key]) return false;
        seen[key] = 1;
    }
    return true;
}

PairIndex::PairIndex(const FinMap& p1, const FinMap& p2)
    : cols_(p2.cod().size()), cells_(p1.cod().size() * p2.cod().size(), -1) {
    for (std::size_t e = 0; e < p1.dom().size(); ++e)
        cells_[static_cast<std::size_t>(p1(static_cast<int>(e))) * cols_ +
               static_cast<std::size_t>(p2(static_cast<int>(e)))] = static_cast<int>(e);
}

int PairIndex::require(int i, int j) const {
    int e = at(i, j);
    if (e < 0)
        throw internal_consistency_error("expected pair (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") missing from pullback");
    return e;
}

FinMap into_pullback(const PullbackResult& pb, const FinMap& u, const FinMap& v) {
    if (u.dom() != v.dom())
        throw boundary_error("pullback cone legs must share a domain");
    PairIndex idx(pb.p1, pb.p2);
    std::vector<int> table(u.dom().size());
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = idx.require(u(static_cast<int>(i)), v(static_cast<int>(i)));
    return FinMap(u.dom(), pb.set, std::move(table));
}

FinMap induce_on_quotient(const FinMap& q, const FinMap& raw) {
    if (q.dom() != raw.dom())
        throw boundary_error("quotient induction requires equal domains");
    std::vector<int> table(q.cod().size(), -1);
    for (std::size_t i = 0; i < q.dom().size(); ++i) {
        int cls = q(static_cast<int>(i));
        int val = raw(static_cast<int>(i));
        int& slot = table[static_cast<std::size_t>(cls)];
        if (slot < 0)
            slot = val;
        else if (slot != val)
            throw internal_consistency_error(
                "map is not constant on quotient class '" + q.cod().label(cls) + "'");
    }
    for (std::size_t c = 0; c < table.size(); ++c)
        if (table[c] < 0)
            throw internal_consistency_error("quotient map is not surjective at class '" +
                                             q.cod().label(static_cast<int>(c)) + "'");
    return FinMap(q.cod(), raw.cod(), std::move(table));
}

}  // namespace setcore
