#include <doctest.h>

#include "ast_gen.hpp"
#include "swf/parser.hpp"
#include "test_support.hpp"

using namespace swf;
using namespace testsup;

namespace {

const char* kRunningExample = R"(
# running example
input csv "repos.csv" key swh_id {
  swh_id: text,
  commit_count: int,
  commiter_count: int,
  latest_commit_date: date
}
filter latest_commit_date > date(2023,1,1)
group {
  branch small {
    filter commiter_count < 5
    random 10000 seed 42
  }
  branch large {
    filter commiter_count >= 5
    random 10000 seed 43
  }
}
union
)";

}  // namespace

TEST_CASE("parse_workflow on the running example") {
    Workflow w = parse_workflow(kRunningExample);
    CHECK(w.input.path == "repos.csv");
    CHECK(w.input.schema.key_field == "swh_id");
    REQUIRE(w.steps.size() == 3);
    CHECK(std::holds_alternative<FilterStep>(w.steps[0].node));
    const auto& g = std::get<GroupStep>(w.steps[1].node);
    REQUIRE(g.branches.size() == 2);
    CHECK(g.branches[0].label == "small");
    REQUIRE(g.branches[0].steps.size() == 2);
    CHECK(std::holds_alternative<FilterStep>(g.branches[0].steps[0].node));
    CHECK(std::holds_alternative<RandomStep>(g.branches[0].steps[1].node));
    CHECK(std::holds_alternative<UnionStep>(w.steps[2].node));
}

TEST_CASE("identity workflow: input block only") {
    Workflow w = parse_workflow("input json \"x.json\" key id { id: text }");
    CHECK(w.steps.empty());
}

TEST_CASE("unknown field in constraint is rejected with a position") {
    const std::string doc =
        "input csv \"p.csv\" key id { id: text, year: int }\nfilter yeer > 2021";
    try {
        parse_workflow(doc);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos().line == 2);
        CHECK(std::string(e.what()).find("yeer") != std::string::npos);
    }
}

TEST_CASE("type mismatch: date literal against an int field") {
    const std::string doc =
        "input csv \"p.csv\" key id { id: text, year: int }\nfilter year > date(2021,1,1)";
    CHECK_THROWS_AS(parse_workflow(doc), ParseError);
}

TEST_CASE("duplicate branch labels are rejected") {
    const std::string doc =
        "input csv \"p.csv\" key id { id: text, n: int }\n"
        "group { branch a { } branch a { } }";
    CHECK_THROWS_AS(parse_workflow(doc), ParseError);
}

TEST_CASE("set operator without a grouped input is rejected") {
    const std::string doc = "input csv \"p.csv\" key id { id: text }\nunion";
    CHECK_THROWS_AS(parse_workflow(doc), ParseError);
}

TEST_CASE("parse_constraint: simple comparison") {
    auto e = parse_constraint("numPages > 6");
    const auto& c = std::get<Comparison>(e->node);
    CHECK(c.op == CmpOp::Gt);
    CHECK(std::get<FieldRef>(c.lhs).name == "numPages");
    CHECK(std::get<LiteralVal>(c.rhs).value == MetadataValue{std::int64_t{6}});
}

TEST_CASE("parse_constraint: chained comparison desugars to a conjunction") {
    auto e = parse_constraint("2021 <= year <= 2025");
    const auto& a = std::get<AndExpr>(e->node);
    const auto& lo = std::get<Comparison>(a.lhs->node);
    const auto& hi = std::get<Comparison>(a.rhs->node);
    CHECK(lo.op == CmpOp::Le);
    CHECK(std::get<LiteralVal>(lo.lhs).value == MetadataValue{std::int64_t{2021}});
    CHECK(std::get<FieldRef>(lo.rhs).name == "year");
    CHECK(std::get<FieldRef>(hi.lhs).name == "year");
    CHECK(std::get<LiteralVal>(hi.rhs).value == MetadataValue{std::int64_t{2025}});
}

TEST_CASE("parse_constraint: date literals in both spellings") {
    auto call = parse_constraint("latest_commit_date > date(2023,1,1)");
    auto iso = parse_constraint("latest_commit_date > 2023-01-01");
    CHECK(*call == *iso);
    const auto& c = std::get<Comparison>(call->node);
    CHECK(std::get<LiteralVal>(c.rhs).value == MetadataValue{Date{2023, 1, 1}});
}

TEST_CASE("parse_constraint: precedence not > comparison > and > or") {
    auto e = parse_constraint("not a == 1 and b == 2 or c == 3");
    // ((not a==1) and b==2) or c==3
    const auto& o = std::get<OrExpr>(e->node);
    const auto& a = std::get<AndExpr>(o.lhs->node);
    CHECK(std::holds_alternative<NotExpr>(a.lhs->node));
    CHECK(std::holds_alternative<Comparison>(a.rhs->node));
    CHECK(std::holds_alternative<Comparison>(o.rhs->node));

    auto parens = parse_constraint("not a == 1 and (b == 2 or c == 3)");
    const auto& a2 = std::get<AndExpr>(parens->node);
    CHECK(std::holds_alternative<OrExpr>(a2.rhs->node));
}

TEST_CASE("parse errors carry an in-bounds source position") {
    for (const char* bad : {"input csv key", "input csv \"x\" key id { id: }",
                            "input csv \"x\" key id { id: text }\nrandom 5"}) {
        try {
            parse_workflow(bad);
            const std::string msg = std::string("expected ParseError for: ") + bad;
            FAIL(msg);
        } catch (const ParseError& e) {
            CHECK(e.pos().line >= 1);
            CHECK(e.pos().column >= 1);
            int lines = 1;
            for (const char* p = bad; *p; ++p) lines += *p == '\n';
            CHECK(e.pos().line <= lines + 1);
        }
    }
}

TEST_CASE("eval_constraint: basic comparisons and missing semantics") {
    auto schema = id_n_schema();
    auto a3 = artifact("x", std::int64_t{3});
    auto amiss = artifact("y", MetadataValue{});

    auto lt5 = parse_constraint("n < 5");
    CHECK(eval_constraint(*lt5, *a3, *schema));
    CHECK(!eval_constraint(*lt5, *amiss, *schema));

    EvalStats stats;
    eval_constraint(*lt5, *amiss, *schema, &stats);
    CHECK(stats.touched_missing);

    // not(false-because-missing) is true
    auto not_lt5 = parse_constraint("not n < 5");
    CHECK(eval_constraint(*not_lt5, *amiss, *schema));
}

TEST_CASE("eval_constraint: missing -> false truth table over {missing, 0..9}") {
    auto schema = id_n_schema();
    auto lt5 = parse_constraint("n < 5");
    for (int v = -1; v < 10; ++v) {
        auto a = v < 0 ? artifact("m", MetadataValue{})
                       : artifact("m", static_cast<std::int64_t>(v));
        const bool expected = v >= 0 && v < 5;
        CHECK(eval_constraint(*lt5, *a, *schema) == expected);
    }
}

TEST_CASE("eval_constraint: boolean connectives distribute") {
    auto schema = id_n_schema();
    auto disj = parse_constraint("n == 2022 or n == 2024");
    CHECK(eval_constraint(*disj, *artifact("x", std::int64_t{2024}), *schema));
    CHECK(!eval_constraint(*disj, *artifact("x", std::int64_t{2023}), *schema));

    auto a = parse_constraint("n >= 2");
    auto b = parse_constraint("n <= 7");
    auto both = parse_constraint("n >= 2 and n <= 7");
    for (std::int64_t v = 0; v < 10; ++v) {
        auto art = artifact("x", v);
        CHECK(eval_constraint(*both, *art, *schema) ==
              (eval_constraint(*a, *art, *schema) && eval_constraint(*b, *art, *schema)));
    }
}

TEST_CASE("chained comparison evaluates like the explicit conjunction") {
    auto schema = id_n_schema();
    auto chained = parse_constraint("2 <= n <= 7");
    auto explicit_form = parse_constraint("2 <= n and n <= 7");
    for (int v = -1; v < 12; ++v) {
        auto a = v < 0 ? artifact("m", MetadataValue{})
                       : artifact("m", static_cast<std::int64_t>(v));
        CHECK(eval_constraint(*chained, *a, *schema) ==
              eval_constraint(*explicit_form, *a, *schema));
    }
}

TEST_CASE("membership over literals and missing") {
    auto schema = id_n_schema();
    auto e = parse_constraint("n in [1, 3, 5]");
    CHECK(eval_constraint(*e, *artifact("x", std::int64_t{3}), *schema));
    CHECK(!eval_constraint(*e, *artifact("x", std::int64_t{4}), *schema));
    CHECK(!eval_constraint(*e, *artifact("x", MetadataValue{}), *schema));
}

TEST_CASE("pretty_print round-trips the running example") {
    Workflow w = parse_workflow(kRunningExample);
    Workflow w2 = parse_workflow(pretty_print(w));
    CHECK(w == w2);
}

TEST_CASE("pretty_print of the identity workflow contains only the input block") {
    Workflow w = parse_workflow("input csv \"a.csv\" key id { id: text }");
    std::string doc = pretty_print(w);
    CHECK(doc.find("input csv") != std::string::npos);
    CHECK(doc.find("filter") == std::string::npos);
    CHECK(parse_workflow(doc) == w);
}

TEST_CASE("round-trip property over generated workflow ASTs") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        astgen::Generator gen(seed);
        Workflow w = gen.workflow();
        const std::string doc = pretty_print(w);
        INFO("seed ", seed, " document:\n", doc);
        Workflow reparsed = parse_workflow(doc);
        CHECK(w == reparsed);
        // print is a fixpoint after one round
        CHECK(pretty_print(reparsed) == doc);
    }
}
