#include "doctest.h"

#include <algorithm>

#include "cfree/error.hpp"
#include "cfree/partitions.hpp"
#include "support.hpp"

using namespace cfree;

namespace {

std::size_t count(PartitionKind kind, std::size_t n) {
    std::size_t c = 0;
    for_each_partition(kind, n, [&](const SetPartition&) { ++c; });
    return c;
}

test::Partition as_blocks(const SetPartition& p) { return p.classes(); }

}  // namespace

TEST_CASE("counts match Bell, Catalan and 2^(n-1)") {
    for (std::size_t n = 1; n <= 8; ++n) {
        CHECK(count(PartitionKind::All, n) == test::bell(n));
        CHECK(Scalar(static_cast<long>(count(PartitionKind::NonCrossing, n))) == test::catalan(n));
        CHECK(count(PartitionKind::NonCrossing, n) == test::nc_partitions(n).size());
    }
    for (std::size_t n = 1; n <= 10; ++n) {
        CHECK(count(PartitionKind::Interval, n) == (std::size_t{1} << (n - 1)));
    }
}

TEST_CASE("enumerate is complete and duplicate free") {
    for (std::size_t n = 1; n <= 7; ++n) {
        for (auto kind : {PartitionKind::All, PartitionKind::NonCrossing, PartitionKind::Interval}) {
            auto list = enumerate(kind, n);
            std::vector<test::Partition> got;
            for (const auto& p : list) got.push_back(as_blocks(p));
            std::sort(got.begin(), got.end());
            CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());

            std::vector<test::Partition> expect;
            for (auto& p : test::all_partitions(n)) {
                const bool keep = kind == PartitionKind::All ||
                                  (kind == PartitionKind::NonCrossing && !test::crossing(p, n)) ||
                                  (kind == PartitionKind::Interval && test::interval(p));
                if (keep) expect.push_back(p);
            }
            std::sort(expect.begin(), expect.end());
            CHECK(got == expect);
        }
    }
    CHECK_THROWS_AS(enumerate(PartitionKind::All, 0), PreconditionError);
    CHECK_THROWS_AS(enumerate(PartitionKind::All, 13), PreconditionError);
}

TEST_CASE("interval partitions are non-crossing with only outer classes") {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (const auto& p : enumerate(PartitionKind::Interval, n)) {
            CHECK(is_noncrossing(p));
            const auto roles = classify_classes(p);
            CHECK(std::all_of(roles.begin(), roles.end(), [](ClassRole r) { return r == ClassRole::Outer; }));
        }
    }
}

TEST_CASE("outer iff min and max are not separated by another class") {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (const auto& p : enumerate(PartitionKind::NonCrossing, n)) {
            const auto roles = classify_classes(p);
            const auto blocks = as_blocks(p);
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                // "separated": some element of another class lies before min
                // and some element of that same class after max
                CHECK((roles[b] == ClassRole::Inner) == test::inner_block(blocks, b));
            }
        }
    }
}

TEST_CASE("crossing partitions are rejected by classify_classes") {
    const SetPartition p(4, {{0, 2}, {1, 3}});
    CHECK_FALSE(is_noncrossing(p));
    CHECK_THROWS_AS(classify_classes(p), PreconditionError);
}

TEST_CASE("roles and tags of an eleven-point partition") {
    // π = {(1,2),(3),(4),(5,8),(6,7),(9,11),(10)}, S = {(3),(5,8)}
    const SetPartition p(11, {{0, 1}, {2}, {3}, {4, 7}, {5, 6}, {8, 10}, {9}});
    const auto roles = classify_classes(p);
    // class order by minimum: (1,2) (3) (4) (5,8) (6,7) (9,11) (10)
    const std::vector<ClassRole> expect{ClassRole::Outer, ClassRole::Outer, ClassRole::Outer, ClassRole::Outer,
                                        ClassRole::Inner, ClassRole::Outer, ClassRole::Inner};
    CHECK(roles == expect);
    const auto tags = outer_order_relations(p, {1, 3});
    const std::vector<OuterTag> expect_tags{OuterTag::BelowS, OuterTag::InS,    OuterTag::BelowS, OuterTag::InS,
                                            OuterTag::Inner,  OuterTag::AboveS, OuterTag::Inner};
    CHECK(tags == expect_tags);
    CHECK_THROWS_AS(outer_order_relations(p, {4}), PreconditionError);
}

TEST_CASE("singletons") {
    const SetPartition p(5, {{0, 4}, {1}, {2, 3}});
    const auto s = singletons(p);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == SetPartition::Class{1});
}

TEST_CASE("invalid partitions") {
    CHECK_THROWS_AS(SetPartition(3, {{0, 1}}), PreconditionError);
    CHECK_THROWS_AS(SetPartition(3, {{0, 1}, {1, 2}}), PreconditionError);
    CHECK_THROWS_AS(SetPartition(2, {{0, 2}}), PreconditionError);
}
