#pragma once

// Dictionary interchange formats.
//
// json     {"meta": {...}, "entries": [{"kind", "char_index", "rep", "re", "im"}]}
//          doubles in shortest round-trip decimal form.
// csv      "# key=value" metadata lines, a header row, one row per entry:
//          index,kind,char_index,rep_a,rep_b,rep_w,re_0..re_{p-1},im_0..im_{p-1}
//          doubles printed with 17 significant digits.
// raw-f64  little-endian: "OSCD", u32 version, u64 p, u64 count, then
//          2p doubles per entry interleaved re, im. Vectors only.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oscdict/dictionary.hpp"
#include "oscdict/verifier.hpp"

namespace oscdict {

/// Malformed or unreadable dictionary input.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { json, csv, raw };

Format parse_format(std::string_view s);
std::string_view to_string(Format f);
std::string_view file_extension(Format f);

Json dictionary_to_json(const Dictionary& dict);
Dictionary dictionary_from_json(const Json& j);

std::string dictionary_to_csv(const Dictionary& dict);
Dictionary dictionary_from_csv(std::string_view text);

std::string dictionary_to_raw(const Dictionary& dict);
std::vector<CVec> vectors_from_raw(std::string_view bytes);

/// Serialized bytes in the requested format.
std::string serialize(const Dictionary& dict, Format format);

void write_file(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

/// Reads a json or csv dictionary (detected from content). raw-f64 input is
/// rejected since it carries no entry metadata.
Dictionary read_dictionary(const std::filesystem::path& path);

}  // namespace oscdict
