#include "oscdict/serialize.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace oscdict {

namespace {

constexpr char kRawMagic[4] = {'O', 'S', 'C', 'D'};
constexpr std::string_view kCsvTag = "# oscdict-csv";

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(std::string_view s) {
    // strtod needs a terminated buffer.
    const std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw FormatError("malformed number: " + tmp);
    return v;
}

std::uint64_t parse_uint(std::string_view s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw FormatError("malformed integer: " + std::string(s));
    }
    return v;
}

TorusKind parse_torus_kind(std::string_view s) {
    if (s == "split") return TorusKind::split;
    if (s == "nonsplit") return TorusKind::nonsplit;
    throw FormatError("unknown entry kind: " + std::string(s));
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
void put_le(std::string& out, T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    auto bits = std::bit_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<char>(bits & 0xFFu));
        bits >>= 8;
    }
}

template <typename T>
T get_le(std::string_view bytes, std::size_t& offset) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    if (offset + sizeof(T) > bytes.size()) throw FormatError("truncated raw-f64 file");
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bits |= static_cast<U>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
    }
    offset += sizeof(T);
    return std::bit_cast<T>(bits);
}

// Shared by the json and csv readers.
std::optional<Complex> complex_or_null(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

template <typename T>
std::optional<T> opt(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

}  // namespace

Format parse_format(std::string_view s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "raw-f64" || s == "raw") return Format::raw;
    throw std::invalid_argument("unknown format: " + std::string(s));
}

std::string_view to_string(Format f) {
    switch (f) {
        case Format::json: return "json";
        case Format::csv: return "csv";
        case Format::raw: return "raw-f64";
    }
    return "unknown";
}

std::string_view file_extension(Format f) {
    switch (f) {
        case Format::json: return ".json";
        case Format::csv: return ".csv";
        case Format::raw: return ".f64";
    }
    return "";
}

// ---------------------------------------------------------------------------
// JSON

Json dictionary_to_json(const Dictionary& dict) {
    Json entries = Json::array();
    for (const auto& e : dict.entries) {
        Json re = Json::array(), im = Json::array();
        for (const auto& z : e.vector) {
            re.push_back(z.real());
            im.push_back(z.imag());
        }
        Json rep;
        if (const auto* s = std::get_if<SplitRep>(&e.rep)) {
            rep = Json{{"y", s->y}, {"z", s->z}};
        } else {
            const auto& n = std::get<NonsplitRep>(e.rep);
            rep = Json{{"a", n.a}, {"c", n.c}, {"w", n.weyl}};
        }
        entries.push_back(Json{{"kind", std::string(to_string(e.kind))},
                               {"char_index", e.char_index},
                               {"rep", std::move(rep)},
                               {"re", std::move(re)},
                               {"im", std::move(im)}});
    }
    return Json{{"meta", meta_to_json(dict.meta)}, {"entries", std::move(entries)}};
}

Dictionary dictionary_from_json(const Json& j) {
    try {
        Dictionary dict;
        const auto& m = j.at("meta");
        dict.meta.p = m.at("p").get<std::uint64_t>();
        dict.meta.kind = parse_dict_kind(m.at("kind").get<std::string>());
        dict.meta.D = opt<Residue>(m.at("D"));
        dict.meta.alpha = m.at("alpha").get<Residue>();
        dict.meta.s = opt<Residue>(m.at("s"));
        dict.meta.t = opt<Residue>(m.at("t"));
        dict.meta.c_scalar = complex_or_null(m.at("c_scalar"));
        dict.meta.excluded_char = opt<std::uint64_t>(m.value("excluded_char", Json(nullptr)));
        dict.meta.version = m.at("version").get<std::string>();
        dict.meta.ordering = m.at("ordering").get<std::string>();

        for (const auto& e : j.at("entries")) {
            DictEntry entry;
            entry.kind = parse_torus_kind(e.at("kind").get<std::string>());
            entry.char_index = e.at("char_index").get<std::uint64_t>();
            const auto& rep = e.at("rep");
            if (entry.kind == TorusKind::split) {
                entry.rep = SplitRep{rep.at("y").get<Residue>(), rep.at("z").get<Residue>()};
            } else {
                entry.rep = NonsplitRep{rep.at("a").get<Residue>(), rep.at("c").get<Residue>(),
                                        rep.at("w").get<bool>()};
            }
            const auto& re = e.at("re");
            const auto& im = e.at("im");
            if (re.size() != im.size()) throw FormatError("re/im length mismatch");
            for (std::size_t t = 0; t < re.size(); ++t) {
                entry.vector.emplace_back(re.at(t).get<double>(), im.at(t).get<double>());
            }
            dict.entries.push_back(std::move(entry));
        }
        return dict;
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("malformed dictionary json: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw FormatError(std::string("malformed dictionary json: ") + ex.what());
    }
}

// ---------------------------------------------------------------------------
// CSV

std::string dictionary_to_csv(const Dictionary& dict) {
    const auto& m = dict.meta;
    const auto p = m.p;
    std::ostringstream os;
    os << kCsvTag << ' ' << kFormatVersion << '\n';
    os << "# p=" << p << '\n';
    os << "# kind=" << to_string(m.kind) << '\n';
    os << "# alpha=" << m.alpha << '\n';
    if (m.D) os << "# D=" << *m.D << '\n';
    if (m.s) os << "# s=" << *m.s << '\n';
    if (m.t) os << "# t=" << *m.t << '\n';
    if (m.c_scalar) {
        os << "# c_re=" << format_double(m.c_scalar->real()) << '\n';
        os << "# c_im=" << format_double(m.c_scalar->imag()) << '\n';
    }
    if (m.excluded_char) os << "# excluded_char=" << *m.excluded_char << '\n';
    os << "# version=" << m.version << '\n';
    os << "# ordering=" << m.ordering << '\n';

    os << "index,kind,char_index,rep_a,rep_b,rep_w";
    for (std::uint64_t t = 0; t < p; ++t) os << ",re_" << t;
    for (std::uint64_t t = 0; t < p; ++t) os << ",im_" << t;
    os << '\n';

    for (std::size_t i = 0; i < dict.entries.size(); ++i) {
        const auto& e = dict.entries[i];
        os << i << ',' << to_string(e.kind) << ',' << e.char_index << ',';
        if (const auto* s = std::get_if<SplitRep>(&e.rep)) {
            os << s->y << ',' << s->z << ",0";
        } else {
            const auto& n = std::get<NonsplitRep>(e.rep);
            os << n.a << ',' << n.c << ',' << (n.weyl ? 1 : 0);
        }
        for (const auto& z : e.vector) os << ',' << format_double(z.real());
        for (const auto& z : e.vector) os << ',' << format_double(z.imag());
        os << '\n';
    }
    return os.str();
}

Dictionary dictionary_from_csv(std::string_view text) {
    Dictionary dict;
    std::map<std::string, std::string, std::less<>> meta;
    bool header_seen = false;
    bool tagged = false;
    std::size_t pos = 0;
    std::optional<double> c_re, c_im;

    try {
        while (pos < text.size()) {
            auto nl = text.find('\n', pos);
            if (nl == std::string_view::npos) nl = text.size();
            std::string_view line = text.substr(pos, nl - pos);
            pos = nl + 1;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (line.empty()) continue;

            if (line.starts_with(kCsvTag)) {
                tagged = true;
                continue;
            }
            if (line.starts_with("# ")) {
                const auto body = line.substr(2);
                const auto eq = body.find('=');
                if (eq == std::string_view::npos) throw FormatError("malformed csv metadata line");
                meta.emplace(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
                continue;
            }
            if (!header_seen) {
                if (!tagged) throw FormatError("missing csv tag line");
                header_seen = true;
                dict.meta.p = parse_uint(meta.at("p"));
                dict.meta.kind = parse_dict_kind(meta.at("kind"));
                dict.meta.alpha = parse_uint(meta.at("alpha"));
                if (auto it = meta.find("D"); it != meta.end()) dict.meta.D = parse_uint(it->second);
                if (auto it = meta.find("s"); it != meta.end()) dict.meta.s = parse_uint(it->second);
                if (auto it = meta.find("t"); it != meta.end()) dict.meta.t = parse_uint(it->second);
                if (auto it = meta.find("c_re"); it != meta.end()) c_re = parse_double(it->second);
                if (auto it = meta.find("c_im"); it != meta.end()) c_im = parse_double(it->second);
                if (c_re && c_im) dict.meta.c_scalar = Complex(*c_re, *c_im);
                if (auto it = meta.find("excluded_char"); it != meta.end()) {
                    dict.meta.excluded_char = parse_uint(it->second);
                }
                dict.meta.version = meta.at("version");
                dict.meta.ordering = meta.at("ordering");
                continue;
            }

            const auto fields = split_fields(line, ',');
            const auto p = dict.meta.p;
            if (fields.size() != 6 + 2 * p) throw FormatError("csv row has the wrong number of fields");
            DictEntry entry;
            entry.kind = parse_torus_kind(fields[1]);
            entry.char_index = parse_uint(fields[2]);
            const auto a = parse_uint(fields[3]);
            const auto b = parse_uint(fields[4]);
            const auto w = parse_uint(fields[5]);
            if (entry.kind == TorusKind::split) {
                entry.rep = SplitRep{a, b};
            } else {
                entry.rep = NonsplitRep{a, b, w != 0};
            }
            for (std::uint64_t t = 0; t < p; ++t) {
                entry.vector.emplace_back(parse_double(fields[6 + t]), parse_double(fields[6 + p + t]));
            }
            dict.entries.push_back(std::move(entry));
        }
    } catch (const std::out_of_range&) {
        throw FormatError("csv metadata is incomplete");
    } catch (const std::invalid_argument& ex) {
        throw FormatError(std::string("malformed csv: ") + ex.what());
    }
    if (!header_seen) throw FormatError("csv file has no header row");
    return dict;
}

// ---------------------------------------------------------------------------
// raw-f64

std::string dictionary_to_raw(const Dictionary& dict) {
    std::string out(kRawMagic, sizeof(kRawMagic));
    put_le<std::uint32_t>(out, kFormatVersion);
    put_le<std::uint64_t>(out, dict.meta.p);
    put_le<std::uint64_t>(out, dict.entries.size());
    for (const auto& e : dict.entries) {
        for (const auto& z : e.vector) {
            put_le<double>(out, z.real());
            put_le<double>(out, z.imag());
        }
    }
    return out;
}

std::vector<CVec> vectors_from_raw(std::string_view bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kRawMagic, 4) != 0) {
        throw FormatError("not a raw-f64 dictionary (bad magic)");
    }
    std::size_t offset = 4;
    const auto version = get_le<std::uint32_t>(bytes, offset);
    if (version != kFormatVersion) throw FormatError("unsupported raw-f64 version");
    const auto p = get_le<std::uint64_t>(bytes, offset);
    const auto count = get_le<std::uint64_t>(bytes, offset);
    if (bytes.size() != offset + count * p * 16) throw FormatError("raw-f64 size does not match header");
    std::vector<CVec> out(count, CVec(p));
    for (auto& v : out) {
        for (auto& z : v) {
            const double re = get_le<double>(bytes, offset);
            const double im = get_le<double>(bytes, offset);
            z = Complex(re, im);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Files

std::string serialize(const Dictionary& dict, Format format) {
    switch (format) {
        case Format::json: return dictionary_to_json(dict).dump(1) + "\n";
        case Format::csv: return dictionary_to_csv(dict);
        case Format::raw: return dictionary_to_raw(dict);
    }
    throw std::invalid_argument("unknown format");
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Dictionary read_dictionary(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    if (bytes.starts_with(std::string_view(kRawMagic, 4))) {
        throw FormatError("raw-f64 files carry no entry metadata; verify the json or csv export instead");
    }
    if (bytes.starts_with(kCsvTag)) return dictionary_from_csv(bytes);
    Json j;
    try {
        j = Json::parse(bytes);
    } catch (const nlohmann::json::parse_error& ex) {
        throw FormatError(std::string("not a json or csv dictionary: ") + ex.what());
    }
    return dictionary_from_json(j);
}

}  // namespace oscdict
