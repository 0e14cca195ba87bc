#pragma once

#include <string>
#include <string_view>

namespace curate {

struct ExtractedText {
    std::string text;    // normalized: trimmed lines joined by '\n'
    std::string reason;  // non-empty when text is unusable ("undecodable")
};

// Tag-level streaming extraction: boilerplate subtrees (script, style, nav,
// header, footer, aside, form, noscript, head...) are dropped, block elements
// become line boundaries, entities are decoded. Residual boilerplate is left
// for line-level dedup downstream.
ExtractedText extract_text(std::string_view html_bytes, std::string_view declared_charset);

// Charset resolution order: declared -> <meta> sniff -> UTF-8 with U+FFFD
// replacement. Supported: utf-8, ascii, iso-8859-1, windows-1252.
std::string decode_to_utf8(std::string_view bytes, std::string_view charset_name);
std::string sniff_meta_charset(std::string_view html_prefix);

}  // namespace curate
