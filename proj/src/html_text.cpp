#include "ragcore/html_text.hpp"

#include <cctype>

#include "ragcore/text.hpp"

namespace ragcore {

namespace {

const std::set<std::string> kBlockTags = {
    "address", "article", "aside",   "blockquote", "br",     "caption", "dd",
    "div",     "dl",      "dt",      "fieldset",   "figure", "footer",  "form",
    "h1",      "h2",      "h3",      "h4",         "h5",     "h6",      "header",
    "hr",      "li",      "main",    "nav",        "ol",     "option",  "p",
    "pre",     "section", "select",  "table",      "tbody",  "td",      "tfoot",
    "th",      "thead",   "title",   "tr",         "ul"};

bool is_tag_start(const std::string& s, std::size_t i) {
    // '<' starts markup only when followed by a letter, '/', '!' or '?'
    if (i + 1 >= s.size()) return false;
    char c = s[i + 1];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '/' || c == '!' || c == '?';
}

struct Tag {
    std::string name;     // lowercased
    bool closing = false;
    bool self_closing = false;
    std::size_t end = 0;  // index just past '>'
};

// Parse the tag starting at s[i] == '<'. Attribute values may contain '>'.
Tag parse_tag(const std::string& s, std::size_t i) {
    Tag t;
    std::size_t j = i + 1;
    if (j < s.size() && s[j] == '/') {
        t.closing = true;
        ++j;
    }
    while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j])))
        t.name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[j++]))));
    while (j < s.size() && s[j] != '>') {
        if (s[j] == '"' || s[j] == '\'') {
            char quote = s[j++];
            while (j < s.size() && s[j] != quote) ++j;
            if (j < s.size()) ++j;
            continue;
        }
        if (s[j] == '/' && j + 1 < s.size() && s[j + 1] == '>') t.self_closing = true;
        ++j;
    }
    t.end = j < s.size() ? j + 1 : s.size();
    return t;
}

void decode_entity(const std::string& s, std::size_t& i, std::string& out) {
    auto semi = s.find(';', i + 1);
    if (semi == std::string::npos || semi - i > 10) {
        out.push_back('&');
        ++i;
        return;
    }
    std::string name = s.substr(i + 1, semi - i - 1);
    std::string decoded;
    if (name == "amp") decoded = "&";
    else if (name == "lt") decoded = "<";
    else if (name == "gt") decoded = ">";
    else if (name == "quot") decoded = "\"";
    else if (name == "apos") decoded = "'";
    else if (name == "nbsp") decoded = " ";
    else if (name.size() > 1 && name[0] == '#') {
        long code = 0;
        bool ok = true;
        if (name[1] == 'x' || name[1] == 'X') {
            for (std::size_t k = 2; k < name.size(); ++k) {
                if (!std::isxdigit(static_cast<unsigned char>(name[k]))) { ok = false; break; }
                code = code * 16 + (std::isdigit(static_cast<unsigned char>(name[k]))
                                        ? name[k] - '0'
                                        : std::tolower(static_cast<unsigned char>(name[k])) - 'a' + 10);
            }
            ok = ok && name.size() > 2;
        } else {
            for (std::size_t k = 1; k < name.size(); ++k) {
                if (!std::isdigit(static_cast<unsigned char>(name[k]))) { ok = false; break; }
                code = code * 10 + (name[k] - '0');
            }
        }
        if (ok && code > 0 && code <= 0x10FFFF) {
            // UTF-8 encode
            unsigned long c = static_cast<unsigned long>(code);
            if (c < 0x80) decoded.push_back(static_cast<char>(c));
            else if (c < 0x800) {
                decoded.push_back(static_cast<char>(0xC0 | (c >> 6)));
                decoded.push_back(static_cast<char>(0x80 | (c & 0x3F)));
            } else if (c < 0x10000) {
                decoded.push_back(static_cast<char>(0xE0 | (c >> 12)));
                decoded.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
                decoded.push_back(static_cast<char>(0x80 | (c & 0x3F)));
            } else {
                decoded.push_back(static_cast<char>(0xF0 | (c >> 18)));
                decoded.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
                decoded.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
                decoded.push_back(static_cast<char>(0x80 | (c & 0x3F)));
            }
        }
    }
    if (decoded.empty()) {  // unknown entity, keep literally
        out.push_back('&');
        ++i;
        return;
    }
    out += decoded;
    i = semi + 1;
}

// Skip raw content up to the matching close tag; nesting-aware for the same
// tag name. Unclosed elements swallow the rest of the document.
std::size_t skip_element(const std::string& s, std::size_t i, const std::string& name) {
    int depth = 1;
    while (i < s.size()) {
        if (s[i] == '<' && is_tag_start(s, i)) {
            if (s.compare(i, 4, "<!--") == 0) {
                auto end = s.find("-->", i + 4);
                i = end == std::string::npos ? s.size() : end + 3;
                continue;
            }
            Tag t = parse_tag(s, i);
            if (t.name == name) {
                if (t.closing) {
                    if (--depth == 0) return t.end;
                } else if (!t.self_closing) {
                    ++depth;
                }
            }
            i = t.end;
        } else {
            ++i;
        }
    }
    return s.size();
}

// "script"/"style" content is raw text: only the literal close tag ends it.
std::size_t skip_raw_text(const std::string& s, std::size_t i, const std::string& name) {
    std::string close = "</" + name;
    std::size_t pos = i;
    while (pos < s.size()) {
        pos = s.find('<', pos);
        if (pos == std::string::npos) return s.size();
        if (s.size() - pos >= close.size()) {
            bool match = true;
            for (std::size_t k = 0; k < close.size(); ++k) {
                if (std::tolower(static_cast<unsigned char>(s[pos + k])) != close[k]) {
                    match = false;
                    break;
                }
            }
            if (match) {
                auto gt = s.find('>', pos);
                return gt == std::string::npos ? s.size() : gt + 1;
            }
        }
        ++pos;
    }
    return s.size();
}

void append_collapsed(std::string& out, const std::string& raw) {
    // a whitespace run collapses to one space, or to one newline when it
    // contains a line break (keeps extraction idempotent on its own output)
    for (std::size_t i = 0; i < raw.size();) {
        if (std::isspace(static_cast<unsigned char>(raw[i]))) {
            bool line_break = false;
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) {
                if (raw[i] == '\n' || raw[i] == '\r') line_break = true;
                ++i;
            }
            if (line_break) {
                while (!out.empty() && out.back() == ' ') out.pop_back();
                if (!out.empty() && out.back() != '\n') out.push_back('\n');
            } else if (!out.empty() && out.back() != ' ' && out.back() != '\n') {
                out.push_back(' ');
            }
        } else {
            out.push_back(raw[i++]);
        }
    }
}

void mark_block_boundary(std::string& out) {
    while (!out.empty() && out.back() == ' ') out.pop_back();
    if (!out.empty() && out.back() != '\n') out.push_back('\n');
}

}  // namespace

const std::set<std::string>& default_boilerplate_tags() {
    static const std::set<std::string> tags = {"header", "footer", "nav", "script", "style"};
    return tags;
}

CleanDocument html_to_text(const RawDocument& doc, const std::set<std::string>& boilerplate_tags) {
    const std::string& s = doc.html;
    std::string out;
    std::string pending_text;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '<' && is_tag_start(s, i)) {
            append_collapsed(out, pending_text);
            pending_text.clear();
            if (s.compare(i, 4, "<!--") == 0) {
                auto end = s.find("-->", i + 4);
                i = end == std::string::npos ? s.size() : end + 3;
                continue;
            }
            if (s[i + 1] == '!' || s[i + 1] == '?') {  // doctype, PI
                auto end = s.find('>', i);
                i = end == std::string::npos ? s.size() : end + 1;
                continue;
            }
            Tag t = parse_tag(s, i);
            i = t.end;
            if (t.name.empty()) continue;
            bool boiler = boilerplate_tags.count(t.name) > 0;
            if (!t.closing && !t.self_closing && boiler) {
                i = (t.name == "script" || t.name == "style") ? skip_raw_text(s, i, t.name)
                                                              : skip_element(s, i, t.name);
                mark_block_boundary(out);
                continue;
            }
            if (!boiler && !t.closing && !t.self_closing &&
                (t.name == "script" || t.name == "style")) {
                // raw-text elements keep their content when not stripped
                std::size_t end = skip_raw_text(s, i, t.name);
                std::size_t content_end = s.rfind("</", end);
                if (content_end == std::string::npos || content_end < i) content_end = end;
                append_collapsed(out, s.substr(i, content_end - i));
                i = end;
            }
            if (kBlockTags.count(t.name)) mark_block_boundary(out);
        } else if (s[i] == '&') {
            decode_entity(s, i, pending_text);
        } else {
            pending_text.push_back(s[i++]);
        }
    }
    append_collapsed(out, pending_text);

    // trim edges and stray spaces before newlines
    std::string body;
    body.reserve(out.size());
    for (char c : out) {
        if (c == '\n') {
            while (!body.empty() && body.back() == ' ') body.pop_back();
            if (!body.empty() && body.back() != '\n') body.push_back('\n');
        } else {
            body.push_back(c);
        }
    }
    while (!body.empty() && (body.back() == '\n' || body.back() == ' ')) body.pop_back();
    std::size_t start = 0;
    while (start < body.size() && (body[start] == '\n' || body[start] == ' ')) ++start;
    body.erase(0, start);

    // entity-decoded '<' must not reintroduce something tag-shaped
    for (std::size_t k = 0; k + 1 < body.size(); ++k)
        if (body[k] == '<' && std::isalpha(static_cast<unsigned char>(body[k + 1])))
            body.insert(k + 1, 1, ' ');

    return CleanDocument{doc.source_uri, std::move(body)};
}

std::vector<std::string> extract_links(const std::string& html) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] != '<' || !is_tag_start(html, i)) {
            ++i;
            continue;
        }
        if (html.compare(i, 4, "<!--") == 0) {
            auto end = html.find("-->", i + 4);
            i = end == std::string::npos ? html.size() : end + 3;
            continue;
        }
        // only <a ...> carries links we follow
        std::size_t j = i + 1;
        std::string name;
        while (j < html.size() && std::isalnum(static_cast<unsigned char>(html[j])))
            name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(html[j++]))));
        if (name != "a") {
            Tag t = parse_tag(html, i);
            i = t.end;
            continue;
        }
        std::string href;
        while (j < html.size() && html[j] != '>') {
            while (j < html.size() && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
            std::size_t attr_start = j;
            while (j < html.size() && html[j] != '=' && html[j] != '>' &&
                   !std::isspace(static_cast<unsigned char>(html[j])))
                ++j;
            std::string attr = text::to_lower(html.substr(attr_start, j - attr_start));
            while (j < html.size() && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
            if (j >= html.size() || html[j] != '=') continue;
            ++j;
            while (j < html.size() && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
            std::string value;
            if (j < html.size() && (html[j] == '"' || html[j] == '\'')) {
                char quote = html[j++];
                std::size_t vstart = j;
                while (j < html.size() && html[j] != quote) ++j;
                value = html.substr(vstart, j - vstart);
                if (j < html.size()) ++j;
            } else {
                std::size_t vstart = j;
                while (j < html.size() && html[j] != '>' &&
                       !std::isspace(static_cast<unsigned char>(html[j])))
                    ++j;
                value = html.substr(vstart, j - vstart);
            }
            if (attr == "href" && !value.empty()) href = value;
        }
        if (!href.empty()) out.push_back(href);
        i = j < html.size() ? j + 1 : html.size();
    }
    return out;
}

}  // namespace ragcore
