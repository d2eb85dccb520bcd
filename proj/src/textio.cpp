#include "apnkit/textio.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

#include "apnkit/errors.hpp"

namespace apn {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool skip_line(std::string_view s) { return s.empty() || s.front() == '#'; }

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

}  // namespace

VectorialFunction parse_vectorial(std::string_view line, int n) {
    std::vector<std::uint32_t> images;
    std::string_view s = trim(line);
    while (!s.empty()) {
        std::size_t end = s.find(' ');
        std::string_view tok = s.substr(0, end);
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, 16);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError("invalid hexadecimal image '" + std::string(tok) + "'");
        images.push_back(v);
        if (end == std::string_view::npos) break;
        s = trim(s.substr(end + 1));
    }
    if (images.empty() || !std::has_single_bit(images.size()) || images.size() < 2)
        throw ParseError("image count " + std::to_string(images.size()) + " is not a power of two >= 2");
    const int m = std::countr_zero(images.size());
    if (m > kMaxVars) throw ParseError("more than 2^16 images");
    for (auto y : images)
        if (n < 32 && y >= (1u << n))
            throw ParseError("image " + std::to_string(y) + " does not fit in " + std::to_string(n) + " bits");
    return VectorialFunction(m, n, std::move(images));
}

std::string format_vectorial(const VectorialFunction& f) {
    const int width = (f.out_dim() + 3) / 4;
    std::string out;
    out.reserve(f.size() * static_cast<std::size_t>(width + 1));
    static constexpr char kDigits[] = "0123456789abcdef";
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        if (x) out += ' ';
        for (int d = width - 1; d >= 0; --d) out += kDigits[(f(x) >> (4 * d)) & 0xf];
    }
    return out;
}

void read_vectorial_lines(std::istream& in, int n, const std::function<void(VectorialFunction, std::size_t)>& sink) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (skip_line(s)) continue;
        VectorialFunction f;
        try {
            f = parse_vectorial(s, n);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), lineno);
        }
        sink(std::move(f), lineno);
    }
}

std::vector<VectorialFunction> read_vectorial_file(const std::string& path, int n) {
    auto in = open_or_throw(path);
    std::vector<VectorialFunction> out;
    read_vectorial_lines(in, n, [&](VectorialFunction f, std::size_t) { out.push_back(std::move(f)); });
    return out;
}

void read_boolean_lines(std::istream& in, int m, const std::function<void(BooleanFunction, std::size_t)>& sink) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (skip_line(s)) continue;
        BooleanFunction f;
        try {
            f = BooleanFunction::from_hex(s, m);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
        sink(std::move(f), lineno);
    }
}

std::vector<BooleanFunction> read_boolean_file(const std::string& path, int m) {
    auto in = open_or_throw(path);
    std::vector<BooleanFunction> out;
    read_boolean_lines(in, m, [&](BooleanFunction f, std::size_t) { out.push_back(std::move(f)); });
    return out;
}

std::vector<Rational> read_rationals(std::istream& in) {
    std::vector<Rational> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (skip_line(s)) continue;
        std::istringstream tokens{std::string(s)};
        std::string tok;
        while (tokens >> tok) {
            try {
                out.push_back(Rational::parse(tok));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), lineno);
            }
        }
    }
    return out;
}

}  // namespace apn
