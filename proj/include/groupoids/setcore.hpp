#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

// Finite sets and total maps, with the limit/colimit toolkit used by the
// groupoid layer: products, pullbacks, equalizers, coequalizers, kernel
// pairs and regular epi / mono factorizations.  All values are immutable
// after construction and all operations are pure.

namespace setcore {

class boundary_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class internal_consistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A finite set presented as an ordered sequence of distinct labels.
/// Element order is part of the value: derived sets (pairs, images,
/// quotients) are labeled canonically so rebuilding them from equal
/// inputs yields identical label sequences.
class FinSet {
public:
    FinSet();
    explicit FinSet(std::vector<std::string> labels);

    std::size_t size() const { return data_->labels.size(); }
    bool empty() const { return data_->labels.empty(); }
    const std::string& label(int i) const { return data_->labels.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& labels() const { return data_->labels; }

    /// Index of a label, or nullopt if absent.
    std::optional<int> find(std::string_view label) const;
    /// Index of a label; throws boundary_error if absent.
    int index_of(std::string_view label) const;

    bool operator==(const FinSet& other) const;
    bool operator!=(const FinSet& other) const { return !(*this == other); }

    std::string describe() const;  // "{a, b, c}" for error messages

private:
    struct Data {
        std::vector<std::string> labels;
        std::unordered_map<std::string, int> index;
    };
    std::shared_ptr<const Data> data_;
};

/// A total map between finite sets, stored as an index table over dom.
class FinMap {
public:
    FinMap(FinSet dom, FinSet cod, std::vector<int> table);

    const FinSet& dom() const { return dom_; }
    const FinSet& cod() const { return cod_; }
    int operator()(int i) const { return table_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& table() const { return table_; }

    bool operator==(const FinMap& other) const;
    bool operator!=(const FinMap& other) const { return !(*this == other); }

private:
    FinSet dom_, cod_;
    std::vector<int> table_;
};

/// Diagrammatic composition: (f then g), defined when cod(f) = dom(g).
FinMap compose(const FinMap& f, const FinMap& g);

FinMap identity(const FinSet& a);

bool is_mono(const FinMap& f);          // injective
bool is_regular_epi(const FinMap& f);   // surjective
bool is_iso(const FinMap& f);           // bijective

std::string pair_label(std::string_view a, std::string_view b);

struct ProductResult {
    FinSet set;   // labels "(a,b)", lexicographic A-major order
    FinMap p1, p2;
};
ProductResult product(const FinSet& a, const FinSet& b);

struct PullbackResult {
    FinSet set;   // {(a,b) : f(a) = g(b)}, A-major order, labels "(a,b)"
    FinMap p1, p2;
};
PullbackResult pullback(const FinMap& f, const FinMap& g);

struct EqualizerResult {
    FinSet set;       // {x : f(x) = g(x)} in dom order, labels kept
    FinMap include;
};
EqualizerResult equalizer(const FinMap& f, const FinMap& g);

struct CoequalizerResult {
    FinSet set;   // classes labeled by their least-index member, in that order
    FinMap q;
};
CoequalizerResult coequalizer(const FinMap& f, const FinMap& g);

PullbackResult kernel_pair(const FinMap& f);

struct ImageFactorization {
    FinMap repi;  // dom -> image, surjective
    FinMap mono;  // image -> cod, injective
};
/// Image ordered by first preimage occurrence; labels taken from cod.
ImageFactorization image_factorize(const FinMap& f);

bool is_jointly_monic(const FinMap& f, const FinMap& g);

/// Reverse lookup for a pullback or product: component indices -> element.
class PairIndex {
public:
    PairIndex(const FinMap& p1, const FinMap& p2);
    int at(int i, int j) const {
        return cells_[static_cast<std::size_t>(i) * cols_ + static_cast<std::size_t>(j)];
    }
    int require(int i, int j) const;
private:
    std::size_t cols_;
    std::vector<int> cells_;
};

/// Mediating map into a pullback from a commuting cone (u, v).
FinMap into_pullback(const PullbackResult& pb, const FinMap& u, const FinMap& v);

/// The map on quotient classes induced by `raw`, where q is surjective and
/// raw is constant on q's fibers.  Throws internal_consistency_error if a
/// fiber maps to two different values.
FinMap induce_on_quotient(const FinMap& q, const FinMap& raw);

}  // namespace setcore
