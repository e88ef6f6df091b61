#include "dcmdeid/dicom/file.hpp"

#include "dcmdeid/dicom/dictionary.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace dcmdeid::dicom {

namespace {

constexpr std::uint32_t undefined_length = 0xFFFFFFFFU;
constexpr std::string_view implementation_uid = "1.2.826.0.1.3680043.10.1401.1";

static_assert(std::endian::native == std::endian::little, "codec assumes a little-endian host");

class reader {
public:
    explicit reader(std::span<const std::uint8_t> data) : data_(data) {}

    [[nodiscard]] std::size_t pos() const { return pos_; }
    [[nodiscard]] std::size_t remaining() const { return data_.size() - pos_; }
    [[nodiscard]] bool at_end() const { return pos_ >= data_.size(); }

    void need(std::size_t n) const {
        if (remaining() < n) {
            throw truncated_stream("stream ends at byte " + std::to_string(data_.size()) +
                                   " while reading " + std::to_string(n) + " bytes at " +
                                   std::to_string(pos_));
        }
    }

    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | data_[pos_ + static_cast<std::size_t>(i)];
        pos_ += 4;
        return v;
    }

    std::span<const std::uint8_t> take(std::size_t n) {
        need(n);
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    [[nodiscard]] std::uint16_t peek_group() const {
        need(2);
        return static_cast<std::uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
    }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_{0};
};

template <typename T>
T load_le(const std::uint8_t* p) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    return v;
}

element_value decode_value(tag t, vr v, std::span<const std::uint8_t> raw) {
    switch (kind_of(v)) {
        case value_kind::text: {
            std::string s(raw.begin(), raw.end());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\0')) s.pop_back();
            return s;
        }
        case value_kind::integers: {
            std::size_t width = (v == vr::US || v == vr::SS) ? 2 : 4;
            if (raw.size() % width != 0) {
                throw malformed_element(t.str() + ": length " + std::to_string(raw.size()) +
                                        " not a multiple of " + std::to_string(width));
            }
            std::vector<std::int64_t> out;
            out.reserve(raw.size() / width);
            for (std::size_t i = 0; i < raw.size(); i += width) {
                const auto* p = raw.data() + i;
                switch (v) {
                    case vr::US: out.push_back(load_le<std::uint16_t>(p)); break;
                    case vr::SS: out.push_back(load_le<std::int16_t>(p)); break;
                    case vr::UL: out.push_back(load_le<std::uint32_t>(p)); break;
                    case vr::SL: out.push_back(load_le<std::int32_t>(p)); break;
                    default:  // AT: group then element
                        out.push_back((static_cast<std::int64_t>(load_le<std::uint16_t>(p)) << 16) |
                                      load_le<std::uint16_t>(p + 2));
                }
            }
            return out;
        }
        case value_kind::decimals: {
            std::size_t width = v == vr::FL ? 4 : 8;
            if (raw.size() % width != 0) {
                throw malformed_element(t.str() + ": length " + std::to_string(raw.size()) +
                                        " not a multiple of " + std::to_string(width));
            }
            std::vector<double> out;
            for (std::size_t i = 0; i < raw.size(); i += width) {
                out.push_back(v == vr::FL ? static_cast<double>(load_le<float>(raw.data() + i))
                                          : load_le<double>(raw.data() + i));
            }
            return out;
        }
        case value_kind::bytes:
            return byte_buffer(raw.begin(), raw.end());
        case value_kind::sequence:
            break;
    }
    throw malformed_element(t.str() + ": sequence value decoded as primitive");
}

struct element_header {
    tag t;
    vr v{vr::UN};
    std::uint32_t length{0};
};

class parser {
public:
    explicit parser(reader& in) : in_(in) {}

    tag read_tag() {
        auto g = in_.u16();
        auto e = in_.u16();
        return {g, e};
    }

    element_header read_header(bool explicit_vr) {
        element_header h;
        h.t = read_tag();
        if (h.t.group == 0xFFFE) {
            h.length = in_.u32();
            return h;
        }
        if (explicit_vr) {
            auto code_bytes = in_.take(2);
            std::string code(code_bytes.begin(), code_bytes.end());
            h.v = vr_from_code(code);
            if (code_has_long_length(code)) {
                in_.u16();
                h.length = in_.u32();
            } else {
                h.length = in_.u16();
            }
        } else {
            h.v = implicit_vr(h.t);
            h.length = in_.u32();
        }
        return h;
    }

    /// Reads elements until `end` (byte offset) or, with an undefined
    /// enclosing length, until an item delimiter.
    dataset read_dataset(bool explicit_vr, std::size_t end, bool until_item_delimiter, int depth) {
        dataset ds;
        while (in_.pos() < end) {
            if (until_item_delimiter && in_.at_end()) {
                throw truncated_stream("missing item delimitation item");
            }
            auto h = read_header(explicit_vr);
            if (h.t == tags::item_delimitation) {
                if (!until_item_delimiter) throw malformed_element("unexpected item delimiter");
                return ds;
            }
            if (h.t.group == 0xFFFE) {
                throw malformed_element("unexpected " + h.t.str() + " inside dataset");
            }
            ds.set(read_value(h, explicit_vr, depth));
        }
        if (until_item_delimiter) throw truncated_stream("missing item delimitation item");
        return ds;
    }

    data_element read_value(const element_header& h, bool explicit_vr, int depth) {
        if (h.v == vr::SQ || (h.length == undefined_length && h.v == vr::UN)) {
            // An undefined-length UN is an implicit-VR encoded sequence.
            bool nested_explicit = h.v == vr::SQ ? explicit_vr : false;
            return data_element::sequence(h.t, read_items(h.length, nested_explicit, depth + 1));
        }
        if (h.length == undefined_length) {
            if (h.t == tags::pixel_data) {
                throw unsupported_transfer_syntax("encapsulated pixel data is not supported");
            }
            throw malformed_element(h.t.str() + ": undefined length on a non-sequence element");
        }
        auto raw = in_.take(h.length);
        return {h.t, h.v, decode_value(h.t, h.v, raw)};
    }

    std::vector<dataset> read_items(std::uint32_t length, bool explicit_vr, int depth) {
        if (depth > 64) throw malformed_element("sequence nesting too deep");
        std::vector<dataset> items;
        bool undefined = length == undefined_length;
        std::size_t end = undefined ? std::numeric_limits<std::size_t>::max() : in_.pos() + length;
        if (!undefined && end > in_.pos() + in_.remaining()) {
            throw truncated_stream("sequence length exceeds stream");
        }
        while (in_.pos() < end) {
            if (undefined && in_.at_end()) throw truncated_stream("missing sequence delimiter");
            auto t = read_tag();
            auto item_len = in_.u32();
            if (t == tags::sequence_delimitation) {
                if (!undefined) throw malformed_element("sequence delimiter in defined-length sequence");
                return items;
            }
            if (t != tags::item) throw malformed_element("expected item tag, found " + t.str());
            if (item_len == undefined_length) {
                items.push_back(read_dataset(explicit_vr, std::numeric_limits<std::size_t>::max(), true, depth));
            } else {
                std::size_t item_end = in_.pos() + item_len;
                if (item_len > in_.remaining()) throw truncated_stream("item length exceeds stream");
                items.push_back(read_dataset(explicit_vr, item_end, false, depth));
                if (in_.pos() != item_end) throw malformed_element("item overruns its length");
            }
        }
        if (undefined) throw truncated_stream("missing sequence delimiter");
        return items;
    }

private:
    reader& in_;
};

// ---- writing ---------------------------------------------------------------

class writer {
public:
    void u16(std::uint16_t v) {
        out_.push_back(static_cast<std::uint8_t>(v & 0xFF));
        out_.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
    }
    void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
    void tag_(tag t) {
        u16(t.group);
        u16(t.element);
    }
    byte_buffer& buffer() { return out_; }

private:
    byte_buffer out_;
};

template <typename T>
void append_le(byte_buffer& out, T v) {
    std::uint8_t buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.insert(out.end(), buf, buf + sizeof(T));
}

byte_buffer encode_primitive(const data_element& e) {
    byte_buffer out;
    std::visit(
        [&](const auto& val) {
            using T = std::decay_t<decltype(val)>;
            if constexpr (std::is_same_v<T, std::string>) {
                out.assign(val.begin(), val.end());
                if (out.size() % 2) out.push_back(e.vr == vr::UI ? 0 : ' ');
            } else if constexpr (std::is_same_v<T, byte_buffer>) {
                out = val;
                if (out.size() % 2) out.push_back(0);
            } else if constexpr (std::is_same_v<T, std::vector<std::int64_t>>) {
                for (auto x : val) {
                    switch (e.vr) {
                        case vr::US: append_le(out, static_cast<std::uint16_t>(x)); break;
                        case vr::SS: append_le(out, static_cast<std::int16_t>(x)); break;
                        case vr::UL: append_le(out, static_cast<std::uint32_t>(x)); break;
                        case vr::SL: append_le(out, static_cast<std::int32_t>(x)); break;
                        case vr::AT:
                            append_le(out, static_cast<std::uint16_t>((x >> 16) & 0xFFFF));
                            append_le(out, static_cast<std::uint16_t>(x & 0xFFFF));
                            break;
                        default:
                            throw malformed_element(e.tag.str() + ": integer value on VR " +
                                                    std::string(to_code(e.vr)));
                    }
                }
            } else if constexpr (std::is_same_v<T, std::vector<double>>) {
                for (auto x : val) {
                    if (e.vr == vr::FL) append_le(out, static_cast<float>(x));
                    else if (e.vr == vr::FD) append_le(out, x);
                    else
                        throw malformed_element(e.tag.str() + ": decimal value on VR " +
                                                std::string(to_code(e.vr)));
                }
            }
        },
        e.value);
    return out;
}

void write_dataset(writer& w, const dataset& ds, bool explicit_vr);

void write_element(writer& w, const data_element& e, bool explicit_vr) {
    if (e.tag.group == 0xFFFE) throw malformed_element("delimiter tags cannot be stored as elements");
    const bool is_seq = e.as_sequence() != nullptr;
    if (is_seq != (e.vr == vr::SQ)) {
        throw malformed_element(e.tag.str() + ": VR SQ must hold exactly a sequence value");
    }
    w.tag_(e.tag);
    if (is_seq) {
        if (explicit_vr) {
            w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>("SQ"), 2));
            w.u16(0);
        }
        w.u32(undefined_length);
        for (const auto& item : *e.as_sequence()) {
            w.tag_(tags::item);
            w.u32(undefined_length);
            write_dataset(w, item, explicit_vr);
            w.tag_(tags::item_delimitation);
            w.u32(0);
        }
        w.tag_(tags::sequence_delimitation);
        w.u32(0);
        return;
    }
    auto payload = encode_primitive(e);
    if (explicit_vr) {
        auto code = to_code(e.vr);
        w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(code.data()), 2));
        if (has_long_length(e.vr)) {
            if (payload.size() >= undefined_length) {
                throw value_too_long(e.tag.str() + ": value exceeds 32-bit length field");
            }
            w.u16(0);
            w.u32(static_cast<std::uint32_t>(payload.size()));
        } else {
            if (payload.size() > 0xFFFF) {
                throw value_too_long(e.tag.str() + ": value of " + std::to_string(payload.size()) +
                                     " bytes exceeds 16-bit length field of VR " + std::string(code));
            }
            w.u16(static_cast<std::uint16_t>(payload.size()));
        }
    } else {
        if (payload.size() >= undefined_length) {
            throw value_too_long(e.tag.str() + ": value exceeds 32-bit length field");
        }
        w.u32(static_cast<std::uint32_t>(payload.size()));
    }
    w.bytes(payload);
}

void write_dataset(writer& w, const dataset& ds, bool explicit_vr) {
    for (const auto& [t, e] : ds) write_element(w, e, explicit_vr);
}

bool has_dicm(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 132 && bytes[128] == 'D' && bytes[129] == 'I' && bytes[130] == 'C' &&
           bytes[131] == 'M';
}

}  // namespace

std::string_view transfer_syntax_uid(transfer_syntax ts) {
    return ts == transfer_syntax::explicit_vr_little_endian ? explicit_vr_little_endian_uid
                                                            : implicit_vr_little_endian_uid;
}

transfer_syntax transfer_syntax_from_uid(std::string_view uid) {
    if (uid == explicit_vr_little_endian_uid) return transfer_syntax::explicit_vr_little_endian;
    if (uid == implicit_vr_little_endian_uid) return transfer_syntax::implicit_vr_little_endian;
    throw unsupported_transfer_syntax("unsupported transfer syntax '" + std::string(uid) + "'");
}

dicom_file parse_file(std::span<const std::uint8_t> bytes, parse_options options) {
    dicom_file file;
    std::span<const std::uint8_t> rest;
    if (has_dicm(bytes)) {
        std::copy_n(bytes.begin(), 128, file.preamble.begin());
        rest = bytes.subspan(132);
    } else if (options.lenient && bytes.size() >= 2 && bytes[0] == 0x02 && bytes[1] == 0x00) {
        rest = bytes;
    } else if (bytes.size() < 132 && !options.lenient) {
        throw truncated_stream("stream shorter than preamble and DICM marker");
    } else {
        throw bad_magic("no DICM marker at offset 128");
    }

    reader in(rest);
    parser p(in);
    while (!in.at_end() && in.remaining() >= 2 && in.peek_group() == 0x0002) {
        auto h = p.read_header(true);
        auto e = p.read_value(h, true, 0);
        if (e.tag != tags::meta_group_length) file.file_meta.set(std::move(e));
    }
    auto ts = file.file_meta.text(tags::transfer_syntax_uid);
    if (!ts) throw unsupported_transfer_syntax("file meta lacks Transfer Syntax UID (0002,0010)");
    file.syntax = transfer_syntax_from_uid(*ts);

    bool explicit_vr = file.syntax == transfer_syntax::explicit_vr_little_endian;
    file.body = p.read_dataset(explicit_vr, rest.size(), false, 0);
    return file;
}

byte_buffer serialize(const dicom_file& file) {
    dataset meta = file.file_meta;
    meta.erase(tags::meta_group_length);
    meta.set(data_element::text(tags::transfer_syntax_uid, vr::UI,
                                std::string(transfer_syntax_uid(file.syntax))));
    for (const auto& [t, e] : meta) {
        if (t.group != 0x0002) throw malformed_element("file meta holds non-0002 element " + t.str());
    }

    writer meta_w;
    write_dataset(meta_w, meta, true);

    writer w;
    w.bytes(file.preamble);
    const char magic[4] = {'D', 'I', 'C', 'M'};
    w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(magic), 4));
    write_element(w, data_element::integers(tags::meta_group_length, vr::UL,
                                            {static_cast<std::int64_t>(meta_w.buffer().size())}),
                  true);
    w.bytes(meta_w.buffer());
    for (const auto& [t, e] : file.body) {
        if (t.group == 0x0002) throw malformed_element("dataset holds file meta element " + t.str());
    }
    write_dataset(w, file.body, file.syntax == transfer_syntax::explicit_vr_little_endian);
    return std::move(w.buffer());
}

dicom_file read_file(const std::filesystem::path& path, parse_options options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    byte_buffer bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_file(bytes, options);
}

void write_file(const std::filesystem::path& path, const dicom_file& file) {
    auto bytes = serialize(file);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + path.string());
}

void sync_meta_with_body(dicom_file& file) {
    if (auto cls = file.body.text(tags::sop_class_uid)) {
        file.file_meta.set(data_element::text(tags::media_storage_sop_class_uid, vr::UI, *cls));
    }
    if (auto inst = file.body.text(tags::sop_instance_uid)) {
        file.file_meta.set(data_element::text(tags::media_storage_sop_instance_uid, vr::UI, *inst));
    }
}

dicom_file make_file(dataset body, transfer_syntax ts) {
    dicom_file f;
    f.body = std::move(body);
    f.syntax = ts;
    f.file_meta.set(data_element::bytes(tags::meta_version, vr::OB, {0x00, 0x01}));
    f.file_meta.set(data_element::text(tags::transfer_syntax_uid, vr::UI, std::string(transfer_syntax_uid(ts))));
    f.file_meta.set(data_element::text(tags::implementation_class_uid, vr::UI, std::string(implementation_uid)));
    sync_meta_with_body(f);
    return f;
}

}  // namespace dcmdeid::dicom
