#pragma once

#include <set>
#include <string>
#include <vector>

#include "ragcore/types.hpp"

namespace ragcore {

/// Elements removed wholesale before text extraction.
const std::set<std::string>& default_boilerplate_tags();  // header, footer, nav, script, style

/// Best-effort tag-soup extraction. Never throws; malformed or empty HTML
/// yields an empty body. Block-level boundaries become single newlines and
/// whitespace runs collapse to one space within lines.
CleanDocument html_to_text(const RawDocument& doc,
                           const std::set<std::string>& boilerplate_tags = default_boilerplate_tags());

/// href targets of <a> elements, raw as written (not resolved).
std::vector<std::string> extract_links(const std::string& html);

}  // namespace ragcore
