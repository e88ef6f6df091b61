#include "dcmdeid/dicom/tag.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace dcmdeid::dicom {

std::string tag::str() const {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "(%04X,%04X)", group, element);
    return buf;
}

namespace {

std::uint16_t parse_hex16(std::string_view s, std::string_view whole) {
    if (s.size() != 4) {
        throw std::invalid_argument("malformed tag: " + std::string(whole));
    }
    std::uint16_t v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw std::invalid_argument("malformed tag: " + std::string(whole));
        v = static_cast<std::uint16_t>((v << 4) | d);
    }
    return v;
}

}  // namespace

tag tag::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        s = s.substr(1, s.size() - 2);
    }
    if (auto comma = s.find(','); comma != std::string_view::npos) {
        return {parse_hex16(s.substr(0, comma), text), parse_hex16(s.substr(comma + 1), text)};
    }
    if (s.size() == 8) {
        return {parse_hex16(s.substr(0, 4), text), parse_hex16(s.substr(4), text)};
    }
    throw std::invalid_argument("malformed tag: " + std::string(text));
}

}  // namespace dcmdeid::dicom
