#include "dcmdeid/deid/policy.hpp"

#include "dcmdeid/deid/errors.hpp"
#include "dcmdeid/util/csv.hpp"
#include "default_policy_text.hpp"

#include <array>
#include <cctype>

namespace dcmdeid::deid {

namespace {

constexpr std::array<std::string_view, 9> action_names{
    "keep", "remove", "replace", "empty", "hash_uid", "shift_date", "map_patient_id", "clean_text", "redact_pixels",
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw policy_syntax_error("policy line " + std::to_string(line) + ": " + msg);
}

policy_action parse_action(std::string_view text, std::size_t line) {
    text = trim(text);
    auto space = text.find_first_of(" \t");
    auto name = text.substr(0, space);
    auto arg = space == std::string_view::npos ? std::string_view{} : trim(text.substr(space));
    auto kind = action_kind_from_string(name);
    if (!kind) fail(line, "unknown action '" + std::string(name) + "'");
    if (*kind == action_kind::replace_fixed) {
        if (arg.empty()) fail(line, "replace needs a value");
    } else if (!arg.empty()) {
        fail(line, "action '" + std::string(name) + "' takes no argument");
    }
    return {*kind, std::string(arg)};
}

dicom::tag parse_tag_at(std::string_view text, std::size_t line) {
    try {
        return dicom::tag::parse(text);
    } catch (const std::invalid_argument& e) {
        fail(line, e.what());
    }
}

private_keep_entry parse_keep_entry(std::string_view text, std::size_t line) {
    // (gggg,"creator",ee)
    text = trim(text);
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') fail(line, "private.keep needs (gggg,\"creator\",ee)");
    text = text.substr(1, text.size() - 2);
    auto rows = util::parse_csv(text);
    if (rows.size() != 1 || rows[0].size() != 3) fail(line, "private.keep needs three fields");
    auto& f = rows[0];
    private_keep_entry e;
    try {
        auto g = std::stoul(std::string(trim(f[0])), nullptr, 16);
        auto off = std::stoul(std::string(trim(f[2])), nullptr, 16);
        if (g > 0xFFFF || (g & 1U) == 0) fail(line, "private.keep group must be odd");
        if (off > 0xFF) fail(line, "private.keep element offset must be one byte");
        e.group = static_cast<std::uint16_t>(g);
        e.offset = static_cast<std::uint8_t>(off);
    } catch (const std::logic_error&) {
        fail(line, "private.keep has non-hex group/offset");
    }
    e.creator = std::string(trim(f[1]));
    if (e.creator.empty()) fail(line, "private.keep creator is empty");
    return e;
}

}  // namespace

std::string_view to_string(action_kind k) {
    if (k == action_kind::replace_fixed) return "replace";
    return action_names[static_cast<std::size_t>(k)];
}

std::optional<action_kind> action_kind_from_string(std::string_view s) {
    for (std::size_t i = 0; i < action_names.size(); ++i) {
        if (action_names[i] == s) return static_cast<action_kind>(i);
    }
    return std::nullopt;
}

void check_legal(const policy_action& action, dicom::tag t, dicom::vr v) {
    using dicom::vr;
    bool ok = true;
    switch (action.kind) {
        case action_kind::keep:
        case action_kind::remove:
        case action_kind::empty:
            break;
        case action_kind::hash_uid:
            ok = v == vr::UI;
            break;
        case action_kind::shift_date:
            ok = dicom::is_date_like(v);
            break;
        case action_kind::replace_fixed:
        case action_kind::map_patient_id:
        case action_kind::clean_text:
            ok = dicom::is_text(v);
            break;
        case action_kind::redact_pixels:
            ok = t == dicom::tags::pixel_data && (v == vr::OB || v == vr::OW);
            break;
    }
    if (!ok) {
        throw policy_conflict("action " + std::string(to_string(action.kind)) + " cannot apply to " + t.str() +
                              " with VR " + std::string(dicom::to_code(v)));
    }
}

policy_action deid_policy::resolve(dicom::tag t, dicom::vr v, const std::optional<std::string>& creator) const {
    if (auto it = rules.find(t); it != rules.end()) return it->second;
    for (const auto& r : ranges) {
        if (r.first <= t && t <= r.last) return r.action;
    }
    if (t.is_private()) {
        if (t.is_private_creator() && creator) {
            for (const auto& k : private_keep_list) {
                if (k.group == t.group && k.creator == *creator) return {action_kind::keep, {}};
            }
        } else if (creator && t.element >= 0x1000) {
            private_keep_entry probe{t.group, *creator, static_cast<std::uint8_t>(t.element & 0xFF)};
            if (private_keep_list.count(probe) != 0) return {action_kind::keep, {}};
        }
        return default_private;
    }
    if (auto it = vr_rules.find(v); it != vr_rules.end()) return it->second;
    return default_standard;
}

deid_policy deid_policy::identity() {
    deid_policy p;
    p.default_standard = {action_kind::keep, {}};
    p.default_private = {action_kind::keep, {}};
    return p;
}

deid_policy parse_policy(std::string_view text) {
    deid_policy p;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));

        if (key == "default.standard") {
            p.default_standard = parse_action(value, line_no);
        } else if (key == "default.private") {
            p.default_private = parse_action(value, line_no);
        } else if (key == "private.keep") {
            p.private_keep_list.insert(parse_keep_entry(value, line_no));
        } else if (key.substr(0, 3) == "vr.") {
            auto code = key.substr(3);
            auto v = dicom::vr_from_code(code);
            if (dicom::to_code(v) != code) fail(line_no, "unknown VR '" + std::string(code) + "'");
            auto action = parse_action(value, line_no);
            check_legal(action, dicom::tag{0x0000, 0x0000}, v);
            p.vr_rules[v] = action;
        } else if (auto dash = key.find(")-("); dash != std::string_view::npos) {
            auto first = parse_tag_at(key.substr(0, dash + 1), line_no);
            auto last = parse_tag_at(key.substr(dash + 2), line_no);
            if (last < first) fail(line_no, "range end precedes start");
            p.ranges.push_back({first, last, parse_action(value, line_no)});
        } else {
            auto t = parse_tag_at(key, line_no);
            if (!p.rules.emplace(t, parse_action(value, line_no)).second) {
                fail(line_no, "duplicate rule for " + t.str());
            }
        }
    }
    return p;
}

deid_policy load_policy(const std::filesystem::path& path) { return parse_policy(util::read_text(path)); }

std::string_view default_policy_text() { return embedded_default_policy; }

const deid_policy& default_policy() {
    static const deid_policy p = parse_policy(default_policy_text());
    return p;
}

}  // namespace dcmdeid::deid
