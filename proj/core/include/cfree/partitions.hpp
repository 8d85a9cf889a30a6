#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cfree {

/// A set partition of {0,…,n-1}.  Classes are sorted internally and ordered
/// by their minimum element.
class SetPartition {
public:
    using Class = std::vector<std::size_t>;

    /// Validates disjointness and coverage, then canonicalizes the order.
    SetPartition(std::size_t n, std::vector<Class> classes);

    std::size_t n() const { return n_; }
    const std::vector<Class>& classes() const { return classes_; }
    std::size_t size() const { return classes_.size(); }

    friend bool operator==(const SetPartition&, const SetPartition&) = default;

private:
    std::size_t n_;
    std::vector<Class> classes_;
};

enum class PartitionKind { All, NonCrossing, Interval };

/// Maximal ground-set size accepted by `enumerate`.
inline constexpr std::size_t kMaxPartitionSize = 12;

/// Visits every partition of the given kind by restricted-growth strings,
/// pruning crossings (resp. non-intervals) as elements are placed.
void for_each_partition(PartitionKind kind, std::size_t n, const std::function<void(const SetPartition&)>& visit);

/// Complete, duplicate-free list in restricted-growth-string order; 1 <= n <= 12.
std::vector<SetPartition> enumerate(PartitionKind kind, std::size_t n);

bool is_noncrossing(const SetPartition& p);
bool is_interval(const SetPartition& p);

enum class ClassRole { Inner, Outer };

/// Inner iff another class has elements strictly on both sides of it.
/// Throws PreconditionError if `p` has a crossing.
std::vector<ClassRole> classify_classes(const SetPartition& p);

/// The one-element classes, in canonical order.
std::vector<SetPartition::Class> singletons(const SetPartition& p);

enum class OuterTag { InS, BelowS, AboveS, Inner };

/// Tags each class relative to a set S of outer classes (given by class
/// index): classes in S are InS; other outer classes are BelowS when some
/// element precedes an element of a class in S and AboveS when every element
/// follows all of them (so every outer class is AboveS when S is empty).
/// Inner classes are tagged Inner.  Throws if S contains an inner class.
std::vector<OuterTag> outer_order_relations(const SetPartition& p, const std::vector<std::size_t>& s);

}  // namespace cfree
