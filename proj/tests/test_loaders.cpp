#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "swf/loaders.hpp"

using namespace swf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        auto p = path / name;
        std::ofstream f(p, std::ios::binary);
        f << content;
        return p.string();
    }
};

MetadataSchema paper_schema() {
    MetadataSchema s;
    s.entries = {{"doi", FieldKind::Text},
                 {"year", FieldKind::Integer},
                 {"score", FieldKind::Real},
                 {"published", FieldKind::Date},
                 {"open", FieldKind::Boolean}};
    s.key_field = "doi";
    return s;
}

DataSetPtr load(const std::string& kind, const std::string& path, const MetadataSchema& s) {
    return LoaderRegistry::with_defaults().load({kind, path, s});
}

}  // namespace

TEST_CASE("csv loader parses typed cells and treats empty cells as missing") {
    TempDir dir("swf_loaders_csv");
    auto p = dir.file("a.csv",
                      "doi,year,score,published,open\n"
                      "10.1/x,2021,1.5,2021-03-04,true\n"
                      "10.1/y,,,,\n");
    auto d = load("csv", p, paper_schema());
    REQUIRE(d->size() == 2);
    const auto& s = *d->schema;
    CHECK(d->artifacts[0]->id == "10.1/x");
    CHECK(d->artifacts[0]->value(s, "year") == MetadataValue{std::int64_t{2021}});
    CHECK(d->artifacts[0]->value(s, "score") == MetadataValue{1.5});
    CHECK(d->artifacts[0]->value(s, "published") == MetadataValue{Date{2021, 3, 4}});
    CHECK(d->artifacts[0]->value(s, "open") == MetadataValue{true});
    CHECK(d->artifacts[1]->value(s, "year").missing());
    CHECK(d->artifacts[1]->value(s, "open").missing());
}

TEST_CASE("csv loader handles quoted fields with commas and escaped quotes") {
    TempDir dir("swf_loaders_quotes");
    auto p = dir.file("a.csv",
                      "doi,title\r\n"
                      "10.1/x,\"hello, \"\"world\"\"\"\r\n");
    MetadataSchema s;
    s.entries = {{"doi", FieldKind::Text}, {"title", FieldKind::Text}};
    s.key_field = "doi";
    auto d = load("csv", p, s);
    REQUIRE(d->size() == 1);
    CHECK(d->artifacts[0]->value(*d->schema, "title") ==
          MetadataValue{std::string("hello, \"world\"")});
}

TEST_CASE("csv column order in the file need not match the schema") {
    TempDir dir("swf_loaders_order");
    auto p = dir.file("a.csv", "year,doi\n2022,10.1/x\n");
    MetadataSchema s;
    s.entries = {{"doi", FieldKind::Text}, {"year", FieldKind::Integer}};
    s.key_field = "doi";
    auto d = load("csv", p, s);
    REQUIRE(d->size() == 1);
    CHECK(d->artifacts[0]->id == "10.1/x");
    CHECK(d->artifacts[0]->value(*d->schema, "year") == MetadataValue{std::int64_t{2022}});
}

TEST_CASE("csv and json loaders produce equivalent datasets") {
    TempDir dir("swf_loaders_equiv");
    auto c = dir.file("a.csv",
                      "doi,year,score,published,open\n"
                      "10.1/x,2021,1.5,2021-03-04,true\n"
                      "10.1/y,2022,2.25,2022-05-06,false\n");
    auto j = dir.file("a.json", R"([
      {"doi":"10.1/x","year":2021,"score":1.5,"published":"2021-03-04","open":true},
      {"doi":"10.1/y","year":2022,"score":2.25,"published":"2022-05-06","open":false}
    ])");
    auto schema = paper_schema();
    auto dc = load("csv", c, schema);
    auto dj = load("json", j, schema);
    REQUIRE(dc->size() == dj->size());
    for (size_t i = 0; i < dc->size(); ++i) {
        CHECK(dc->artifacts[i]->id == dj->artifacts[i]->id);
        CHECK(dc->artifacts[i]->values == dj->artifacts[i]->values);
    }
}

TEST_CASE("json loader: empty array yields an empty frame; absent keys are missing") {
    TempDir dir("swf_loaders_json");
    auto schema = paper_schema();

    auto empty = dir.file("e.json", "[]");
    CHECK(load("json", empty, schema)->size() == 0);

    auto partial = dir.file("p.json", R"([{"doi":"10.1/x"}])");
    auto d = load("json", partial, schema);
    REQUIRE(d->size() == 1);
    CHECK(d->artifacts[0]->value(*d->schema, "year").missing());
}

TEST_CASE("json loader rejects nested objects and non-array roots") {
    TempDir dir("swf_loaders_bad_json");
    auto schema = paper_schema();
    auto nested = dir.file("n.json", R"([{"doi":"x","year":{"a":1}}])");
    CHECK_THROWS_AS(load("json", nested, schema), LoadError);
    auto obj = dir.file("o.json", R"({"doi":"x"})");
    CHECK_THROWS_AS(load("json", obj, schema), LoadError);
}

TEST_CASE("duplicate key values are fatal at load time") {
    TempDir dir("swf_loaders_dupkey");
    auto p = dir.file("a.csv", "doi,year\n10.1/x,2021\n10.1/x,2022\n");
    MetadataSchema s;
    s.entries = {{"doi", FieldKind::Text}, {"year", FieldKind::Integer}};
    s.key_field = "doi";
    CHECK_THROWS_AS(load("csv", p, s), LoadError);
}

TEST_CASE("missing schema column in the csv header is fatal") {
    TempDir dir("swf_loaders_nocol");
    auto p = dir.file("a.csv", "doi\n10.1/x\n");
    MetadataSchema s;
    s.entries = {{"doi", FieldKind::Text}, {"year", FieldKind::Integer}};
    s.key_field = "doi";
    CHECK_THROWS_AS(load("csv", p, s), LoadError);
}

TEST_CASE("unparseable cells are fatal, naming the column and the value") {
    TempDir dir("swf_loaders_badcell");
    auto p = dir.file("a.csv", "doi,year\n10.1/x,twenty\n");
    MetadataSchema s;
    s.entries = {{"doi", FieldKind::Text}, {"year", FieldKind::Integer}};
    s.key_field = "doi";
    try {
        load("csv", p, s);
        FAIL("expected LoadError");
    } catch (const LoadError& e) {
        std::string msg = e.what();
        CHECK(msg.find("year") != std::string::npos);
        CHECK(msg.find("twenty") != std::string::npos);
    }
}

TEST_CASE("missing file is fatal") {
    MetadataSchema s;
    s.entries = {{"doi", FieldKind::Text}};
    s.key_field = "doi";
    CHECK_THROWS_AS(load("csv", "/nonexistent/x.csv", s), LoadError);
}

TEST_CASE("registry rejects unknown kinds and duplicate registrations") {
    auto reg = LoaderRegistry::with_defaults();
    MetadataSchema s;
    s.entries = {{"doi", FieldKind::Text}};
    s.key_field = "doi";
    CHECK_THROWS(reg.resolve({"xml", "a.xml", s}));
    CHECK_THROWS(reg.register_kind("csv", [] { return std::shared_ptr<const Loader>(); }));
    // a fresh kind is accepted
    reg.register_kind("tsv", [] { return std::shared_ptr<const Loader>(); });
}

TEST_CASE("load_inferred infers column types for metadata joins") {
    TempDir dir("swf_loaders_infer");
    auto p = dir.file("a.csv",
                      "id,count,ratio,when,flag,note\n"
                      "x,3,0.5,2021-01-02,true,hello\n"
                      "y,4,1,2021-02-03,false,7up\n");
    auto t = load_inferred(LoaderKind::Csv, p);
    REQUIRE(t.schema.entries.size() == 6);
    CHECK(t.schema.kind_of("count") == FieldKind::Integer);
    CHECK(t.schema.kind_of("ratio") == FieldKind::Real);
    CHECK(t.schema.kind_of("when") == FieldKind::Date);
    CHECK(t.schema.kind_of("flag") == FieldKind::Boolean);
    CHECK(t.schema.kind_of("note") == FieldKind::Text);
    CHECK(t.rows.size() == 2);
}
