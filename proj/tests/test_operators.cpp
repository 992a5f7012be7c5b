#include <doctest.h>

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <set>

#include "swf/operators.hpp"
#include "swf/parser.hpp"
#include "swf/rng.hpp"
#include "test_support.hpp"

using namespace swf;
using namespace testsup;

namespace {

bool subset_of(const DataSet& small, const DataSet& big) {
    std::set<std::string> ids;
    for (const auto& a : big.artifacts) ids.insert(a->id);
    return std::all_of(small.artifacts.begin(), small.artifacts.end(),
                       [&](const ArtifactPtr& a) { return ids.count(a->id) > 0; });
}

// numbered_set ids are "a<k>"; recover k.
int num_of(const std::string& id) { return std::stoi(id.substr(1)); }

std::vector<int> nums_of(const DataSet& d) {
    std::vector<int> out;
    for (const auto& a : d.artifacts) out.push_back(num_of(a->id));
    return out;
}

}  // namespace

TEST_CASE("filter keeps exactly the satisfying artifacts, in input order") {
    auto d = numbered_set(10);  // n = 1..10
    auto c = parse_constraint("n < 5");
    auto out = filter_op(*d, *c);
    REQUIRE(out.data->size() == 4);
    CHECK(ids_of(*out.data) == std::vector<std::string>{"a1", "a2", "a3", "a4"});
    CHECK(out.excluded_missing == 0);
    CHECK(subset_of(*out.data, *d));
}

TEST_CASE("filter counts exclusions caused by missing values") {
    auto schema = id_n_schema();
    std::vector<ArtifactPtr> arts{artifact("a", std::int64_t{1}),
                                  artifact("b", MetadataValue{}),
                                  artifact("c", std::int64_t{9})};
    DataSet d{"d", 0, schema, arts, {}};
    auto c = parse_constraint("n < 5");
    auto out = filter_op(d, *c);
    CHECK(ids_of(*out.data) == std::vector<std::string>{"a"});
    CHECK(out.excluded_missing == 1);
}

TEST_CASE("random is deterministic, order-preserving, and a subset") {
    auto d = numbered_set(50);
    auto s1 = random_op(*d, 10, 42);
    auto s2 = random_op(*d, 10, 42);
    auto s3 = random_op(*d, 10, 43);
    CHECK(ids_of(*s1) == ids_of(*s2));
    CHECK(ids_of(*s1) != ids_of(*s3));
    CHECK(s1->size() == 10);
    CHECK(subset_of(*s1, *d));
    auto nums = nums_of(*s1);
    CHECK(std::is_sorted(nums.begin(), nums.end()));
}

TEST_CASE("random edge cases: n=0, n=|d|, n>|d|") {
    auto d = numbered_set(5);
    CHECK(random_op(*d, 0, 1)->size() == 0);
    CHECK(ids_of(*random_op(*d, 5, 1)) == ids_of(*d));
    CHECK_THROWS_AS(random_op(*d, 6, 1), ExecError);
}

TEST_CASE("random 1-of-5 selection is roughly uniform over seeds") {
    auto d = numbered_set(5);
    std::array<int, 5> hits{};
    const int trials = 10000;
    for (int s = 0; s < trials; ++s) {
        auto out = random_op(*d, 1, static_cast<std::uint64_t>(s));
        REQUIRE(out->size() == 1);
        hits[static_cast<size_t>(num_of(out->artifacts[0]->id) - 1)]++;
    }
    for (int h : hits) {
        double frac = static_cast<double>(h) / trials;
        CHECK(frac > 0.18);
        CHECK(frac < 0.22);
    }
}

TEST_CASE("systematic ascending: every k-th element after a seeded start") {
    auto d = numbered_set(10);
    auto out = systematic_op(*d, 5, "n", true, 7);
    REQUIRE(out->size() == 5);
    auto nums = nums_of(*out);
    // sorted-by-n order equals input order; k = 2, start r in [0, 2)
    int r = nums[0] - 1;
    CHECK((r == 0 || r == 1));
    for (size_t i = 0; i < nums.size(); ++i)
        CHECK(nums[i] == r + 1 + 2 * static_cast<int>(i));
    CHECK(ids_of(*systematic_op(*d, 5, "n", true, 7)) == ids_of(*out));
}

TEST_CASE("systematic with |d|=7, n=3 uses k=floor(7/3)=2") {
    auto d = numbered_set(7);
    auto out = systematic_op(*d, 3, "n", true, 11);
    REQUIRE(out->size() == 3);
    auto nums = nums_of(*out);
    CHECK((nums[0] == 1 || nums[0] == 2));
    CHECK(nums[1] == nums[0] + 2);
    CHECK(nums[2] == nums[0] + 4);
}

TEST_CASE("systematic descending walks the reversed order") {
    auto d = numbered_set(10);
    auto out = systematic_op(*d, 5, "n", false, 3);
    REQUIRE(out->size() == 5);
    auto nums = nums_of(*out);
    // output stays in input order; the selected values are {m, m-2, ..., m-8}
    int m = *std::max_element(nums.begin(), nums.end());
    CHECK((m == 10 || m == 9));
    std::set<int> expected;
    for (int i = 0; i < 5; ++i) expected.insert(m - 2 * i);
    CHECK(std::set<int>(nums.begin(), nums.end()) == expected);
}

TEST_CASE("manual selection picks listed ids and reports unresolved ones") {
    auto d = numbered_set(5);
    auto out = manual_op(*d, {"a3", "a1", "zz"});
    CHECK(ids_of(*out.data) == std::vector<std::string>{"a1", "a3"});
    REQUIRE(out.unresolved.size() == 1);
    CHECK(out.unresolved[0] == "zz");
}

TEST_CASE("grouping by constraints splits by size") {
    auto d = numbered_set(16);
    std::vector<Stratum> strata;
    strata.push_back({"lo", parse_constraint("n < 10")});
    strata.push_back({"hi", parse_constraint("n >= 10")});
    auto parts = group_strata(*d, strata);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0]->size() == 9);
    CHECK(parts[1]->size() == 7);
}

TEST_CASE("partition_strata accepts an exact partition, rejects overlap and gaps") {
    auto d = numbered_set(10);
    std::vector<Stratum> ok;
    ok.push_back({"lo", parse_constraint("n < 5")});
    ok.push_back({"hi", parse_constraint("n >= 5")});
    auto parts = partition_strata(*d, ok);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0]->size() == 4);
    CHECK(parts[1]->size() == 6);

    std::vector<Stratum> gap;  // n = 5 uncovered
    gap.push_back({"lo", parse_constraint("n < 5")});
    gap.push_back({"hi", parse_constraint("n > 5")});
    CHECK_THROWS_AS(partition_strata(*d, gap), ExecError);

    std::vector<Stratum> overlap;  // n = 5 in both
    overlap.push_back({"lo", parse_constraint("n < 6")});
    overlap.push_back({"hi", parse_constraint("n > 4")});
    CHECK_THROWS_AS(partition_strata(*d, overlap), ExecError);
}

TEST_CASE("union at depth 1 deduplicates by id, first occurrence wins") {
    auto a = set_of({{"a", 1}, {"b", 2}});
    auto b = set_of({{"b", 5}, {"c", 3}});
    DataSet parent{"g", 1, a->schema, {}, {a, b}};
    auto out = union_op(parent);
    CHECK(out->depth == 0);
    CHECK(ids_of(*out) == std::vector<std::string>{"a", "b", "c"});
    // first occurrence of "b" wins
    CHECK(out->artifacts[1]->value(*out->schema, "n") == MetadataValue{std::int64_t{2}});
}

TEST_CASE("intersection keeps ids present in every child, in first-child order") {
    auto a = set_of({{"a", 1}, {"b", 2}, {"c", 3}});
    auto b = set_of({{"c", 3}, {"b", 2}, {"d", 4}});
    DataSet parent{"g", 1, a->schema, {}, {a, b}};
    auto out = intersection_op(parent);
    CHECK(ids_of(*out) == std::vector<std::string>{"b", "c"});
}

TEST_CASE("executor: stratified equals group + per-branch filter/random with derived seeds") {
    auto frame = numbered_set(40);
    LoaderRegistry reg = LoaderRegistry::with_defaults();
    ExecOptions opts;

    Workflow strat = parse_workflow(
        "input csv \"unused.csv\" key id { id: text, n: int }\n"
        "stratified { stratum lo where n < 20 stratum hi where n >= 20 } take 5 seed 99");
    auto r1 = execute_workflow(strat, frame, reg, opts);

    const std::uint64_t s0 = mix_seed(99, 0);
    const std::uint64_t s1 = mix_seed(99, 1);
    auto lo = filter_op(*frame, *parse_constraint("n < 20")).data;
    auto hi = filter_op(*frame, *parse_constraint("n >= 20")).data;
    auto lo_pick = random_op(*lo, 5, s0);
    auto hi_pick = random_op(*hi, 5, s1);

    REQUIRE(r1.final_set->depth == 1);
    REQUIRE(r1.final_set->children.size() == 2);
    CHECK(ids_of(*r1.final_set->children[0]) == ids_of(*lo_pick));
    CHECK(ids_of(*r1.final_set->children[1]) == ids_of(*hi_pick));
}

TEST_CASE("executor: cluster picks whole groups deterministically") {
    auto frame = numbered_set(30);
    LoaderRegistry reg = LoaderRegistry::with_defaults();
    ExecOptions opts;
    Workflow w = parse_workflow(
        "input csv \"unused.csv\" key id { id: text, n: int }\n"
        "cluster { stratum a where n < 10 stratum b where 10 <= n < 20 "
        "stratum c where n >= 20 } pick 2 seed 7");
    auto r1 = execute_workflow(w, frame, reg, opts);
    auto r2 = execute_workflow(w, frame, reg, opts);
    REQUIRE(r1.final_set->depth == 1);
    REQUIRE(r1.final_set->children.size() == 2);
    for (const auto& child : r1.final_set->children) {
        // each picked cluster is one intact stratum: sizes 9, 10, or 11
        CHECK(child->size() >= 9);
        CHECK(child->size() <= 11);
    }
    REQUIRE(r2.final_set->children.size() == 2);
    for (size_t i = 0; i < 2; ++i)
        CHECK(ids_of(*r1.final_set->children[i]) == ids_of(*r2.final_set->children[i]));
}

TEST_CASE("executor: quota rejects ids outside their stratum") {
    auto frame = numbered_set(10);
    LoaderRegistry reg = LoaderRegistry::with_defaults();
    ExecOptions opts;
    Workflow bad = parse_workflow(
        "input csv \"unused.csv\" key id { id: text, n: int }\n"
        "quota { stratum lo where n < 5 take [\"a7\"] stratum hi where n >= 5 take [\"a6\"] }");
    CHECK_THROWS_AS(execute_workflow(bad, frame, reg, opts), ExecError);

    Workflow good = parse_workflow(
        "input csv \"unused.csv\" key id { id: text, n: int }\n"
        "quota { stratum lo where n < 5 take [\"a2\"] stratum hi where n >= 5 take [\"a6\"] }");
    auto r = execute_workflow(good, frame, reg, opts);
    REQUIRE(r.final_set->children.size() == 2);
    CHECK(ids_of(*r.final_set->children[0]) == std::vector<std::string>{"a2"});
    CHECK(ids_of(*r.final_set->children[1]) == std::vector<std::string>{"a6"});
}

TEST_CASE("executor: seed override changes random results deterministically") {
    auto frame = numbered_set(60);
    LoaderRegistry reg = LoaderRegistry::with_defaults();
    Workflow w = parse_workflow(
        "input csv \"unused.csv\" key id { id: text, n: int }\nrandom 10 seed 5");
    ExecOptions plain;
    ExecOptions ovr;
    ovr.seed_override = 123;
    auto a = execute_workflow(w, frame, reg, plain);
    auto b = execute_workflow(w, frame, reg, ovr);
    auto c = execute_workflow(w, frame, reg, ovr);
    CHECK(ids_of(*a.final_set) != ids_of(*b.final_set));
    CHECK(ids_of(*b.final_set) == ids_of(*c.final_set));
    // the override derives per-operator seeds; the first operator uses ordinal 0
    CHECK(ids_of(*b.final_set) == ids_of(*random_op(*frame, 10, mix_seed(123, 0))));
}

TEST_CASE("add_metadata joins by key and extends the schema") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "swf_test_addmeta";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "frame.csv");
        f << "id,n\na1,1\na2,2\na3,3\n";
        std::ofstream g(dir / "extra.csv");
        g << "id,tag\na1,x\na3,y\n";
    }
    LoaderRegistry reg = LoaderRegistry::with_defaults();
    Workflow w = parse_workflow(
        "input csv \"frame.csv\" key id { id: text, n: int }\n"
        "add_metadata csv \"extra.csv\" join id");
    ExecOptions opts;
    opts.base_dir = dir.string();
    auto frame = reg.load({"csv", (dir / "frame.csv").string(), w.input.schema});
    auto r = execute_workflow(w, frame, reg, opts);
    const auto& out = r.final_set;
    CHECK(out->size() == 3);
    REQUIRE(out->schema->index_of("tag").has_value());
    CHECK(out->artifacts[0]->value(*out->schema, "tag") == MetadataValue{std::string("x")});
    CHECK(out->artifacts[1]->value(*out->schema, "tag").missing());
    CHECK(out->artifacts[2]->value(*out->schema, "tag") == MetadataValue{std::string("y")});
    fs::remove_all(dir);
}

TEST_CASE("add_metadata rejects a duplicate right-side join key") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "swf_test_addmeta_dup";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "frame.csv");
        f << "id,n\na1,1\n";
        std::ofstream g(dir / "extra.csv");
        g << "id,tag\na1,x\na1,y\n";
    }
    LoaderRegistry reg = LoaderRegistry::with_defaults();
    Workflow w = parse_workflow(
        "input csv \"frame.csv\" key id { id: text, n: int }\n"
        "add_metadata csv \"extra.csv\" join id");
    ExecOptions opts;
    opts.base_dir = dir.string();
    auto frame = reg.load({"csv", (dir / "frame.csv").string(), w.input.schema});
    CHECK_THROWS_AS(execute_workflow(w, frame, reg, opts), ExecError);
    fs::remove_all(dir);
}

TEST_CASE("mix_seed derives distinct child seeds") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 100; ++i) seen.insert(mix_seed(42, i));
    CHECK(seen.size() == 100);
    CHECK(mix_seed(42, 0) == mix_seed(42, 0));
    CHECK(mix_seed(42, 0) != mix_seed(43, 0));
}
