#include "swf/value.hpp"

#include <charconv>
#include <cstdio>

namespace swf {

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::string format_real(double v) {
    // Shortest representation that round-trips; keep a decimal marker so the
    // DSL lexer reads it back as a real, not an integer.
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, end);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

const char* to_string(FieldKind k) {
    switch (k) {
        case FieldKind::Integer: return "int";
        case FieldKind::Real: return "real";
        case FieldKind::Text: return "text";
        case FieldKind::Date: return "date";
        case FieldKind::Boolean: return "bool";
    }
    return "?";
}

std::optional<FieldKind> field_kind_from_string(const std::string& s) {
    if (s == "int") return FieldKind::Integer;
    if (s == "real") return FieldKind::Real;
    if (s == "text") return FieldKind::Text;
    if (s == "date") return FieldKind::Date;
    if (s == "bool") return FieldKind::Boolean;
    return std::nullopt;
}

std::string MetadataValue::display() const {
    if (missing()) return "";
    if (is_integer()) return std::to_string(as_integer());
    if (is_real()) return format_real(as_real());
    if (is_text()) return as_text();
    if (is_date()) return as_date().iso();
    return as_boolean() ? "true" : "false";
}

}  // namespace swf
