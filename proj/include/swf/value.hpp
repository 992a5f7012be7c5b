#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace swf {

// Calendar date, day precision, proleptic Gregorian.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;

    // Days since 1970-01-01 (negative before the epoch).
    std::int64_t day_number() const {
        int y = year - (month <= 2 ? 1 : 0);
        const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
        const unsigned yoe = static_cast<unsigned>(y - era * 400);
        const unsigned doy =
            (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2u) / 5u +
            static_cast<unsigned>(day) - 1u;
        const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
        return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
    }

    static bool is_leap(int y) {
        return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    }

    static bool valid(int y, int m, int d) {
        if (m < 1 || m > 12 || d < 1) return false;
        static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        int len = lengths[m - 1];
        if (m == 2 && is_leap(y)) len = 29;
        return d <= len;
    }

    std::string iso() const;
};

std::string format_real(double v);

enum class FieldKind { Integer, Real, Text, Date, Boolean };

const char* to_string(FieldKind k);
std::optional<FieldKind> field_kind_from_string(const std::string& s);

// Tagged metadata value; monostate encodes "missing".
class MetadataValue {
public:
    using Storage =
        std::variant<std::monostate, std::int64_t, double, std::string, Date, bool>;

    MetadataValue() = default;
    MetadataValue(std::int64_t v) : v_(v) {}
    MetadataValue(int v) : v_(static_cast<std::int64_t>(v)) {}
    MetadataValue(double v) : v_(v) {}
    MetadataValue(std::string v) : v_(std::move(v)) {}
    MetadataValue(const char* v) : v_(std::string(v)) {}
    MetadataValue(Date v) : v_(v) {}
    MetadataValue(bool v) : v_(v) {}

    bool missing() const { return std::holds_alternative<std::monostate>(v_); }
    bool is_integer() const { return std::holds_alternative<std::int64_t>(v_); }
    bool is_real() const { return std::holds_alternative<double>(v_); }
    bool is_text() const { return std::holds_alternative<std::string>(v_); }
    bool is_date() const { return std::holds_alternative<Date>(v_); }
    bool is_boolean() const { return std::holds_alternative<bool>(v_); }

    std::int64_t as_integer() const { return std::get<std::int64_t>(v_); }
    double as_real() const { return std::get<double>(v_); }
    const std::string& as_text() const { return std::get<std::string>(v_); }
    Date as_date() const { return std::get<Date>(v_); }
    bool as_boolean() const { return std::get<bool>(v_); }

    // Numeric view: integers and reals as double, dates as day number.
    std::optional<double> numeric() const {
        if (is_integer()) return static_cast<double>(as_integer());
        if (is_real()) return as_real();
        if (is_date()) return static_cast<double>(as_date().day_number());
        return std::nullopt;
    }

    bool matches(FieldKind k) const {
        switch (k) {
            case FieldKind::Integer: return is_integer();
            case FieldKind::Real: return is_real();
            case FieldKind::Text: return is_text();
            case FieldKind::Date: return is_date();
            case FieldKind::Boolean: return is_boolean();
        }
        return false;
    }

    std::string display() const;

    bool operator==(const MetadataValue&) const = default;

private:
    Storage v_;
};

}  // namespace swf
