#include "cfree/partitions.hpp"

#include <algorithm>
#include <string>

#include "cfree/error.hpp"

namespace cfree {

SetPartition::SetPartition(std::size_t n, std::vector<Class> classes) : n_(n), classes_(std::move(classes)) {
    std::vector<char> seen(n, 0);
    for (auto& c : classes_) {
        if (c.empty()) throw PreconditionError("set partition with an empty class");
        std::sort(c.begin(), c.end());
        for (std::size_t e : c) {
            if (e >= n) throw PreconditionError("set partition element " + std::to_string(e + 1) + " outside 1.." + std::to_string(n));
            if (seen[e]) throw PreconditionError("set partition classes are not disjoint");
            seen[e] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw PreconditionError("set partition classes do not cover the ground set");
    }
    std::sort(classes_.begin(), classes_.end(), [](const Class& a, const Class& b) { return a.front() < b.front(); });
}

namespace {

struct Generator {
    PartitionKind kind;
    std::size_t n;
    const std::function<void(const SetPartition&)>& visit;
    std::vector<std::size_t> block_of;   // restricted growth string
    std::vector<std::size_t> block_min;
    std::vector<std::size_t> block_last;

    bool admissible(std::size_t j, std::size_t b) const {
        if (b == block_min.size()) return true;  // new block
        if (kind == PartitionKind::Interval) return block_of[j - 1] == b;
        if (kind == PartitionKind::NonCrossing) {
            const std::size_t l = block_last[b];
            for (std::size_t k = l + 1; k < j; ++k) {
                if (block_min[block_of[k]] < l) return false;
            }
        }
        return true;
    }

    void emit() {
        std::vector<SetPartition::Class> classes(block_min.size());
        for (std::size_t e = 0; e < n; ++e) classes[block_of[e]].push_back(e);
        visit(SetPartition(n, std::move(classes)));
    }

    void place(std::size_t j) {
        if (j == n) {
            emit();
            return;
        }
        const std::size_t blocks = block_min.size();
        for (std::size_t b = 0; b <= blocks; ++b) {
            if (!admissible(j, b)) continue;
            block_of[j] = b;
            if (b == blocks) {
                block_min.push_back(j);
                block_last.push_back(j);
                place(j + 1);
                block_min.pop_back();
                block_last.pop_back();
            } else {
                const std::size_t prev = block_last[b];
                block_last[b] = j;
                place(j + 1);
                block_last[b] = prev;
            }
        }
    }
};

}  // namespace

void for_each_partition(PartitionKind kind, std::size_t n, const std::function<void(const SetPartition&)>& visit) {
    if (n == 0) {
        visit(SetPartition(0, {}));
        return;
    }
    Generator g{kind, n, visit, std::vector<std::size_t>(n), {}, {}};
    g.place(0);
}

std::vector<SetPartition> enumerate(PartitionKind kind, std::size_t n) {
    if (n < 1 || n > kMaxPartitionSize) {
        throw PreconditionError("partition size " + std::to_string(n) + " outside 1.." + std::to_string(kMaxPartitionSize));
    }
    std::vector<SetPartition> out;
    for_each_partition(kind, n, [&](const SetPartition& p) { out.push_back(p); });
    return out;
}

bool is_noncrossing(const SetPartition& p) {
    const auto& cs = p.classes();
    for (std::size_t x = 0; x < cs.size(); ++x) {
        for (std::size_t y = 0; y < cs.size(); ++y) {
            if (x == y) continue;
            // a < b < c < d with a, c in class x and b, d in class y
            for (std::size_t a : cs[x]) {
                for (std::size_t b : cs[y]) {
                    if (b <= a) continue;
                    for (std::size_t c : cs[x]) {
                        if (c <= b) continue;
                        for (std::size_t d : cs[y]) {
                            if (d > c) return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

bool is_interval(const SetPartition& p) {
    for (const auto& c : p.classes()) {
        if (c.back() - c.front() + 1 != c.size()) return false;
    }
    return true;
}

std::vector<ClassRole> classify_classes(const SetPartition& p) {
    if (!is_noncrossing(p)) throw PreconditionError("inner/outer classification needs a non-crossing partition");
    const auto& cs = p.classes();
    std::vector<ClassRole> roles(cs.size(), ClassRole::Outer);
    for (std::size_t b = 0; b < cs.size(); ++b) {
        const std::size_t j = cs[b].front();
        for (std::size_t c = 0; c < cs.size() && roles[b] == ClassRole::Outer; ++c) {
            if (c == b) continue;
            const bool left = cs[c].front() < j;
            const bool right = cs[c].back() > j;
            if (left && right) roles[b] = ClassRole::Inner;
        }
    }
    return roles;
}

std::vector<SetPartition::Class> singletons(const SetPartition& p) {
    std::vector<SetPartition::Class> out;
    for (const auto& c : p.classes()) {
        if (c.size() == 1) out.push_back(c);
    }
    return out;
}

std::vector<OuterTag> outer_order_relations(const SetPartition& p, const std::vector<std::size_t>& s) {
    const auto roles = classify_classes(p);
    const auto& cs = p.classes();
    std::vector<OuterTag> tags(cs.size());
    std::vector<char> in_s(cs.size(), 0);
    bool have_max = false;
    std::size_t s_max = 0;
    for (std::size_t b : s) {
        if (b >= cs.size()) throw IndexOutOfRange("class index outside the partition");
        if (roles[b] == ClassRole::Inner) throw PreconditionError("S may contain only outer classes");
        in_s[b] = 1;
        s_max = have_max ? std::max(s_max, cs[b].back()) : cs[b].back();
        have_max = true;
    }
    for (std::size_t b = 0; b < cs.size(); ++b) {
        if (roles[b] == ClassRole::Inner) {
            tags[b] = OuterTag::Inner;
        } else if (in_s[b]) {
            tags[b] = OuterTag::InS;
        } else if (have_max && cs[b].front() < s_max) {
            tags[b] = OuterTag::BelowS;
        } else {
            tags[b] = OuterTag::AboveS;
        }
    }
    return tags;
}

}  // namespace cfree
