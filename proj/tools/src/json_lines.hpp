#pragma once

#include <map>
#include <string>
#include <string_view>

namespace delone::cli {

// Line (1-based) on which each value of a syntactically valid JSON text
// starts, keyed by JSON pointer ("" for the root).
class JsonLines {
  public:
    explicit JsonLines(std::string_view text);
    // Line of the pointer or of its nearest recorded ancestor.
    int line_of(std::string pointer) const;

  private:
    std::map<std::string, int> lines_;
};

// Line of a byte offset.
int line_at(std::string_view text, std::size_t offset);

std::string pointer_escape(const std::string& key);

}  // namespace delone::cli
