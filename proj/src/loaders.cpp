#include "swf/loaders.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "swf/error.hpp"

namespace swf {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::optional<std::int64_t> try_int(const std::string& s) {
    std::int64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last) return std::nullopt;
    return v;
}

std::optional<double> try_real(const std::string& s) {
    double v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<Date> try_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t from, std::size_t n) -> std::optional<int> {
        int v = 0;
        for (std::size_t i = from; i < from + n; ++i) {
            if (s[i] < '0' || s[i] > '9') return std::nullopt;
            v = v * 10 + (s[i] - '0');
        }
        return v;
    };
    auto y = digits(0, 4), m = digits(5, 2), d = digits(8, 2);
    if (!y || !m || !d || !Date::valid(*y, *m, *d)) return std::nullopt;
    return Date{*y, *m, *d};
}

DataSetPtr build_dataset(const MetadataSchema& schema,
                         std::vector<std::vector<MetadataValue>> rows,
                         const std::string& source) {
    auto schema_ptr = std::make_shared<const MetadataSchema>(schema);
    const std::size_t key_idx = *schema.index_of(schema.key_field);

    auto out = std::make_shared<DataSet>();
    out->label = source;
    out->depth = 0;
    out->schema = schema_ptr;

    std::unordered_set<std::string> seen;
    for (auto& row : rows) {
        const MetadataValue& key = row[key_idx];
        if (key.missing()) throw LoadError(source + ": missing key value");
        std::string id = key.display();
        if (!seen.insert(id).second) throw LoadError(source + ": duplicate key '" + id + "'");
        auto a = std::make_shared<Artifact>();
        a->id = std::move(id);
        a->values = std::move(row);
        out->artifacts.push_back(std::move(a));
    }
    return out;
}

class CsvLoader final : public Loader {
public:
    DataSetPtr load(const LoaderSpec& spec) const override { return load_csv(spec); }
};

class JsonLoader final : public Loader {
public:
    DataSetPtr load(const LoaderSpec& spec) const override { return load_json(spec); }
};

MetadataValue json_value_to_metadata(const nlohmann::json& v, FieldKind kind,
                                     const std::string& key) {
    if (v.is_null()) return {};
    switch (kind) {
        case FieldKind::Integer:
            if (v.is_number_integer()) return MetadataValue{v.get<std::int64_t>()};
            break;
        case FieldKind::Real:
            if (v.is_number()) {
                double d = v.get<double>();
                if (std::isfinite(d)) return MetadataValue{d};
            }
            break;
        case FieldKind::Text:
            if (v.is_string()) return MetadataValue{v.get<std::string>()};
            break;
        case FieldKind::Date:
            if (v.is_string())
                if (auto d = try_iso_date(v.get<std::string>())) return MetadataValue{*d};
            break;
        case FieldKind::Boolean:
            if (v.is_boolean()) return MetadataValue{v.get<bool>()};
            break;
    }
    throw LoadError("unparsable value for '" + key + "': " + v.dump());
}

}  // namespace

MetadataValue parse_cell(const std::string& raw, FieldKind kind, std::size_t row,
                         const std::string& column) {
    if (raw.empty()) return {};
    switch (kind) {
        case FieldKind::Integer:
            if (auto v = try_int(raw)) return MetadataValue{*v};
            break;
        case FieldKind::Real:
            if (auto v = try_real(raw)) return MetadataValue{*v};
            break;
        case FieldKind::Text:
            return MetadataValue{raw};
        case FieldKind::Date:
            if (auto v = try_iso_date(raw)) return MetadataValue{*v};
            break;
        case FieldKind::Boolean:
            if (raw == "true") return MetadataValue{true};
            if (raw == "false") return MetadataValue{false};
            break;
    }
    throw LoadError("row " + std::to_string(row) + ", column '" + column +
                    "': unparsable " + to_string(kind) + " value \"" + raw + "\"");
}

std::vector<std::vector<std::string>> read_csv_file(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    quoted = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                any = true;
                ++i;
                break;
            case ',':
                row.push_back(std::move(field));
                field.clear();
                any = true;
                ++i;
                break;
            case '\r':
                ++i;
                break;
            case '\n':
                if (any || !field.empty() || !row.empty()) {
                    row.push_back(std::move(field));
                    field.clear();
                    rows.push_back(std::move(row));
                    row.clear();
                    any = false;
                }
                ++i;
                break;
            default:
                field += c;
                any = true;
                ++i;
        }
    }
    if (quoted) throw LoadError(path + ": unterminated quoted field");
    if (any || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

DataSetPtr load_csv(const LoaderSpec& spec) {
    spec.schema.check();
    auto rows = read_csv_file(spec.path);
    if (rows.empty()) throw LoadError(spec.path + ": missing header row");

    const auto& header = rows.front();
    std::vector<std::size_t> col_of(spec.schema.entries.size());
    for (std::size_t e = 0; e < spec.schema.entries.size(); ++e) {
        const std::string& name = spec.schema.entries[e].name;
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw LoadError(spec.path + ": missing column '" + name + "'");
        col_of[e] = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<std::vector<MetadataValue>> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        std::vector<MetadataValue> values(spec.schema.entries.size());
        for (std::size_t e = 0; e < spec.schema.entries.size(); ++e) {
            const std::string raw = col_of[e] < row.size() ? row[col_of[e]] : std::string();
            values[e] = parse_cell(raw, spec.schema.entries[e].kind, r,
                                   spec.schema.entries[e].name);
        }
        out.push_back(std::move(values));
    }
    return build_dataset(spec.schema, std::move(out), spec.path);
}

DataSetPtr load_json(const LoaderSpec& spec) {
    spec.schema.check();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(spec.path));
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError(spec.path + ": " + e.what());
    }
    if (!doc.is_array()) throw LoadError(spec.path + ": top-level value is not an array");

    std::vector<std::vector<MetadataValue>> out;
    for (const auto& obj : doc) {
        if (!obj.is_object()) throw LoadError(spec.path + ": array element is not an object");
        for (const auto& [key, val] : obj.items())
            if (val.is_object() || val.is_array())
                throw LoadError(spec.path + ": nested value under '" + key + "' rejected");
        std::vector<MetadataValue> values(spec.schema.entries.size());
        for (std::size_t e = 0; e < spec.schema.entries.size(); ++e) {
            const auto& entry = spec.schema.entries[e];
            auto it = obj.find(entry.name);
            if (it == obj.end()) continue;  // absent key -> missing
            values[e] = json_value_to_metadata(*it, entry.kind, entry.name);
        }
        out.push_back(std::move(values));
    }
    return build_dataset(spec.schema, std::move(out), spec.path);
}

InferredTable load_inferred(LoaderKind kind, const std::string& path) {
    InferredTable t;
    if (kind == LoaderKind::Csv) {
        auto rows = read_csv_file(path);
        if (rows.empty()) throw LoadError(path + ": missing header row");
        const auto& header = rows.front();

        // A column is int if every non-empty cell parses as int, then real,
        // then date, then bool; otherwise text.
        for (std::size_t c = 0; c < header.size(); ++c) {
            bool all_int = true, all_real = true, all_date = true, all_bool = true;
            for (std::size_t r = 1; r < rows.size(); ++r) {
                if (c >= rows[r].size() || rows[r][c].empty()) continue;
                const std::string& s = rows[r][c];
                if (all_int && !try_int(s)) all_int = false;
                if (all_real && !try_real(s)) all_real = false;
                if (all_date && !try_iso_date(s)) all_date = false;
                if (all_bool && s != "true" && s != "false") all_bool = false;
            }
            FieldKind k = all_int     ? FieldKind::Integer
                          : all_real  ? FieldKind::Real
                          : all_date  ? FieldKind::Date
                          : all_bool  ? FieldKind::Boolean
                                      : FieldKind::Text;
            t.schema.entries.push_back({header[c], k});
        }
        for (std::size_t r = 1; r < rows.size(); ++r) {
            std::vector<MetadataValue> values(header.size());
            for (std::size_t c = 0; c < header.size(); ++c) {
                const std::string raw = c < rows[r].size() ? rows[r][c] : std::string();
                values[c] = parse_cell(raw, t.schema.entries[c].kind, r, header[c]);
            }
            t.rows.push_back(std::move(values));
        }
        return t;
    }

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError(path + ": " + e.what());
    }
    if (!doc.is_array()) throw LoadError(path + ": top-level value is not an array");

    // Collect keys in first-seen order, then infer a kind per key.
    std::vector<std::string> keys;
    for (const auto& obj : doc) {
        if (!obj.is_object()) throw LoadError(path + ": array element is not an object");
        for (const auto& [key, val] : obj.items()) {
            (void)val;
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
        }
    }
    for (const auto& key : keys) {
        bool all_int = true, all_real = true, all_date = true, all_bool = true;
        for (const auto& obj : doc) {
            auto it = obj.find(key);
            if (it == obj.end() || it->is_null()) continue;
            if (!it->is_number_integer()) all_int = false;
            if (!it->is_number()) all_real = false;
            if (!(it->is_string() && try_iso_date(it->get<std::string>()))) all_date = false;
            if (!it->is_boolean()) all_bool = false;
        }
        FieldKind k = all_int     ? FieldKind::Integer
                      : all_real  ? FieldKind::Real
                      : all_date  ? FieldKind::Date
                      : all_bool  ? FieldKind::Boolean
                                  : FieldKind::Text;
        t.schema.entries.push_back({key, k});
    }
    for (const auto& obj : doc) {
        std::vector<MetadataValue> values(keys.size());
        for (std::size_t c = 0; c < keys.size(); ++c) {
            auto it = obj.find(keys[c]);
            if (it == obj.end()) continue;
            values[c] = json_value_to_metadata(*it, t.schema.entries[c].kind, keys[c]);
        }
        t.rows.push_back(std::move(values));
    }
    return t;
}

LoaderRegistry LoaderRegistry::with_defaults() {
    LoaderRegistry r;
    r.register_kind("csv", [] { return std::make_shared<const CsvLoader>(); });
    r.register_kind("json", [] { return std::make_shared<const JsonLoader>(); });
    return r;
}

void LoaderRegistry::register_kind(const std::string& kind, LoaderFactory factory) {
    if (factories_.count(kind)) throw Error("loader kind '" + kind + "' already registered");
    factories_[kind] = std::move(factory);
}

std::shared_ptr<const Loader> LoaderRegistry::resolve(const LoaderSpec& spec) const {
    auto it = factories_.find(spec.kind);
    if (it == factories_.end()) throw Error("unknown loader kind '" + spec.kind + "'");
    return it->second();
}

const char* to_string(LoaderKind k) {
    return k == LoaderKind::Csv ? "csv" : "json";
}

}  // namespace swf
