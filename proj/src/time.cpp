#include "egonet/time.hpp"

#include <fmt/format.h>

#include <cctype>

#include "egonet/error.hpp"

namespace egonet {

namespace {

int read_digits(std::string_view s, std::size_t pos, std::size_t n, std::string_view whole) {
    if (pos + n > s.size()) throw ValidationError(fmt::format("truncated timestamp '{}'", whole));
    int v = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ValidationError(fmt::format("bad digit in timestamp '{}'", whole));
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

void expect(std::string_view s, std::size_t pos, char c, std::string_view whole) {
    if (pos >= s.size() || s[pos] != c)
        throw ValidationError(fmt::format("expected '{}' at offset {} in timestamp '{}'", c, pos, whole));
}

}  // namespace

Instant twitter_epoch() {
    using namespace std::chrono;
    return sys_days{year{2006} / January / 1};
}

Instant parse_iso8601(std::string_view text) {
    using namespace std::chrono;
    const int y = read_digits(text, 0, 4, text);
    expect(text, 4, '-', text);
    const int mo = read_digits(text, 5, 2, text);
    expect(text, 7, '-', text);
    const int d = read_digits(text, 8, 2, text);
    expect(text, 10, 'T', text);
    const int hh = read_digits(text, 11, 2, text);
    expect(text, 13, ':', text);
    const int mm = read_digits(text, 14, 2, text);
    expect(text, 16, ':', text);
    const int ss = read_digits(text, 17, 2, text);

    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ValidationError(fmt::format("empty fraction in timestamp '{}'", text));
    }
    const std::string_view zone = text.substr(pos);
    if (zone != "Z" && zone != "+00:00")
        throw ValidationError(fmt::format("timestamp '{}' is not UTC", text));

    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 59)
        throw ValidationError(fmt::format("out-of-range field in timestamp '{}'", text));
    return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_iso8601(Instant t) {
    using namespace std::chrono;
    const auto dp = floor<std::chrono::days>(t);
    const year_month_day ymd{dp};
    const hh_mm_ss hms{t - dp};
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                       hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

}  // namespace egonet
