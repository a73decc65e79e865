#include "ghm/pattern.hpp"

#include "ghm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ghm {

Pattern::Pattern(std::size_t m, std::vector<Arc> arcs) : m_(m), arcs_(std::move(arcs))
{
    if (m_ == 0)
        throw ContractError("pattern must have at least one vertex");
    for (const auto & [i, j] : arcs_) {
        if (i >= m_ || j >= m_)
            throw ContractError("arc (" + std::to_string(i + 1) + "," + std::to_string(j + 1)
                                + ") references a vertex outside 1.." + std::to_string(m_));
        if (i == j)
            throw ContractError("pattern arcs must not be loops (vertex " + std::to_string(i + 1) + ")");
    }
    std::sort(arcs_.begin(), arcs_.end());
    if (std::adjacent_find(arcs_.begin(), arcs_.end()) != arcs_.end())
        throw ContractError("pattern has a duplicate arc");
}

Pattern Pattern::isolated(std::size_t m)
{
    return Pattern(m, {});
}

Pattern Pattern::directed_path(std::size_t m)
{
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i + 1 < m; ++i)
        arcs.emplace_back(i, i + 1);
    return Pattern(m, std::move(arcs));
}

Pattern Pattern::directed_cycle(std::size_t m)
{
    if (m < 2)
        throw ContractError("a directed cycle needs at least two vertices");
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < m; ++i)
        arcs.emplace_back(i, (i + 1) % m);
    return Pattern(m, std::move(arcs));
}

bool Pattern::has_arc(std::size_t i, std::size_t j) const
{
    return std::binary_search(arcs_.begin(), arcs_.end(), Arc{i, j});
}

bool Pattern::connected() const
{
    std::vector<std::size_t> parent(m_);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    std::size_t components = m_;
    for (const auto & [i, j] : arcs_) {
        auto a = find(i), b = find(j);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

Pattern Pattern::relabel(const std::vector<std::size_t> & order) const
{
    if (order.size() != m_)
        throw ContractError("relabeling has wrong size");
    std::vector<Arc> arcs;
    arcs.reserve(arcs_.size());
    for (const auto & [i, j] : arcs_)
        arcs.emplace_back(order[i], order[j]);
    return Pattern(m_, std::move(arcs));
}

LabeledPattern::LabeledPattern(Pattern pattern, std::size_t k) : pattern_(std::move(pattern)), k_(k)
{
    if (k_ > pattern_.m())
        throw ContractError("labeled pattern has k = " + std::to_string(k_) + " > m = "
                            + std::to_string(pattern_.m()));
}

namespace {

// Off-diagonal adjacency positions in row-major order. Bit string position t
// is stored at integer bit (L - 1 - t) so that lexicographic order of bit
// strings coincides with numeric order of codes.
struct CodeLayout {
    std::size_t m;
    std::size_t length;  // m (m - 1)

    explicit CodeLayout(std::size_t m_) : m(m_), length(m_ * (m_ - 1)) {}

    std::size_t position(std::size_t i, std::size_t j) const { return i * (m - 1) + (j < i ? j : j - 1); }
    std::uint64_t bit(std::size_t i, std::size_t j) const { return std::uint64_t{1} << (length - 1 - position(i, j)); }

    std::uint64_t encode(const Pattern & p) const
    {
        std::uint64_t code = 0;
        for (const auto & [i, j] : p.arcs())
            code |= bit(i, j);
        return code;
    }

    Pattern decode(std::uint64_t code) const
    {
        std::vector<Arc> arcs;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (i != j && (code & bit(i, j)))
                    arcs.emplace_back(i, j);
        return Pattern(m, std::move(arcs));
    }
};

// For every relabeling that fixes vertices 0..fixed-1, a table sending each
// code bit to its image bit.
class RelabelTables {
public:
    RelabelTables(std::size_t m, std::size_t fixed) : layout_(m)
    {
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), std::size_t{0});
        do {
            std::vector<std::uint8_t> table(layout_.length);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    if (i != j)
                        table[layout_.length - 1 - layout_.position(i, j)] =
                            static_cast<std::uint8_t>(layout_.length - 1 - layout_.position(order[i], order[j]));
            tables_.push_back(std::move(table));
        } while (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(fixed), order.end()));
    }

    const CodeLayout & layout() const { return layout_; }

    std::uint64_t apply(const std::vector<std::uint8_t> & table, std::uint64_t code) const
    {
        std::uint64_t out = 0;
        while (code) {
            auto b = static_cast<std::size_t>(__builtin_ctzll(code));
            out |= std::uint64_t{1} << table[b];
            code &= code - 1;
        }
        return out;
    }

    std::uint64_t minimum(std::uint64_t code) const
    {
        std::uint64_t best = code;
        for (const auto & t : tables_)
            best = std::min(best, apply(t, code));
        return best;
    }

    /// True when no relabeling yields a smaller code.
    bool is_minimal(std::uint64_t code) const
    {
        for (const auto & t : tables_)
            if (apply(t, code) < code)
                return false;
        return true;
    }

private:
    CodeLayout layout_;
    std::vector<std::vector<std::uint8_t>> tables_;
};

std::string pack(std::initializer_list<std::size_t> header, std::size_t length, std::uint64_t code)
{
    std::string bytes;
    for (auto h : header)
        bytes.push_back(static_cast<char>(h));
    const std::size_t n_bytes = (length + 7) / 8;
    for (std::size_t b = 0; b < n_bytes; ++b) {
        unsigned byte = 0;
        for (std::size_t t = 0; t < 8; ++t) {
            const std::size_t pos = b * 8 + t;
            byte <<= 1;
            if (pos < length && (code >> (length - 1 - pos)) & 1U)
                byte |= 1U;
        }
        bytes.push_back(static_cast<char>(byte));
    }
    return bytes;
}

void check_cap(std::size_t m, std::size_t cap, const char * what)
{
    if (m > cap)
        throw CapExceeded(std::string(what) + " is exhaustive over m! orderings; m = " + std::to_string(m),
                          std::tgamma(static_cast<double>(m) + 1.0), std::tgamma(static_cast<double>(cap) + 1.0));
}

}  // namespace

std::string canonical_form(const Pattern & p, std::size_t max_m)
{
    check_cap(p.m(), max_m, "canonical form");
    RelabelTables tables(p.m(), 0);
    return pack({p.m()}, tables.layout().length, tables.minimum(tables.layout().encode(p)));
}

std::string canonical_form(const LabeledPattern & p, std::size_t max_m)
{
    check_cap(p.m(), max_m, "canonical form");
    RelabelTables tables(p.m(), p.k());
    return pack({p.m(), p.k()}, tables.layout().length, tables.minimum(tables.layout().encode(p.pattern())));
}

std::string to_hex(const std::string & bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xF]);
    }
    return out;
}

namespace {

std::vector<Pattern> enumerate_minimal_codes(std::size_t m, std::size_t fixed, bool connected_only)
{
    RelabelTables tables(m, fixed);
    const auto & layout = tables.layout();
    std::vector<Pattern> out;
    const std::uint64_t end = std::uint64_t{1} << layout.length;
    for (std::uint64_t code = 0; code < end; ++code) {
        if (!tables.is_minimal(code))
            continue;
        auto p = layout.decode(code);
        if (connected_only && !p.connected())
            continue;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

std::vector<Pattern> enumerate_patterns(std::size_t max_m, bool connected_only, std::size_t cap)
{
    if (max_m > cap)
        throw CapExceeded("pattern enumeration up to m = " + std::to_string(max_m),
                          std::ldexp(1.0, static_cast<int>(max_m * (max_m - 1))),
                          std::ldexp(1.0, static_cast<int>(cap * (cap - 1))));
    std::vector<Pattern> out;
    for (std::size_t m = 1; m <= max_m; ++m) {
        auto level = enumerate_minimal_codes(m, 0, connected_only);
        out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
    }
    return out;
}

std::vector<LabeledPattern> enumerate_labeled_patterns(std::size_t max_m, std::size_t k, bool connected_only,
                                                       std::size_t cap)
{
    if (k > max_m)
        throw ContractError("label count k = " + std::to_string(k) + " exceeds max_m = " + std::to_string(max_m));
    if (max_m > cap)
        throw CapExceeded("labeled pattern enumeration up to m = " + std::to_string(max_m),
                          std::ldexp(1.0, static_cast<int>(max_m * (max_m - 1))),
                          std::ldexp(1.0, static_cast<int>(cap * (cap - 1))));
    std::vector<LabeledPattern> out;
    for (std::size_t m = std::max<std::size_t>(k, 1); m <= max_m; ++m)
        for (auto & p : enumerate_minimal_codes(m, k, connected_only))
            out.emplace_back(std::move(p), k);
    return out;
}

Pattern disjoint_union(const Pattern & p1, const Pattern & p2)
{
    auto arcs = p1.arcs();
    const std::size_t offset = p1.m();
    for (const auto & [i, j] : p2.arcs())
        arcs.emplace_back(i + offset, j + offset);
    return Pattern(p1.m() + p2.m(), std::move(arcs));
}

LabeledPattern glued_union(const LabeledPattern & p1, const LabeledPattern & p2)
{
    const std::size_t k = p1.k();
    if (p2.k() != k)
        throw ContractError("glued union needs equal label counts (" + std::to_string(k) + " vs "
                            + std::to_string(p2.k()) + ")");
    const std::size_t m1 = p1.m();
    auto image = [&](std::size_t v) { return v < k ? v : v - k + m1; };
    auto arcs = p1.pattern().arcs();
    for (const auto & [i, j] : p2.pattern().arcs())
        arcs.emplace_back(image(i), image(j));
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    return LabeledPattern(Pattern(m1 + p2.m() - k, std::move(arcs)), k);
}

}  // namespace ghm
