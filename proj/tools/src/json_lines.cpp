#include "json_lines.hpp"

#include <cctype>

namespace delone::cli {

namespace {

struct Scanner {
    std::string_view s;
    std::size_t i = 0;
    int line = 1;
    std::map<std::string, int>& out;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
            if (s[i] == '\n') ++line;
            ++i;
        }
    }

    std::string string() {
        std::string v;
        ++i;  // opening quote
        while (i < s.size() && s[i] != '"') {
            if (s[i] == '\\' && i + 1 < s.size()) {
                ++i;
                switch (s[i]) {
                    case 'n': v += '\n'; break;
                    case 't': v += '\t'; break;
                    case 'u': v += '?'; i += 4; break;
                    default: v += s[i];
                }
            } else {
                v += s[i];
            }
            ++i;
        }
        ++i;
        return v;
    }

    void value(const std::string& ptr) {
        ws();
        if (i >= s.size()) return;
        out.emplace(ptr, line);
        const char c = s[i];
        if (c == '{') {
            ++i;
            ws();
            while (i < s.size() && s[i] != '}') {
                const std::string key = string();
                ws();
                ++i;  // colon
                value(ptr + "/" + pointer_escape(key));
                ws();
                if (i < s.size() && s[i] == ',') ++i;
                ws();
            }
            ++i;
        } else if (c == '[') {
            ++i;
            ws();
            for (int k = 0; i < s.size() && s[i] != ']'; ++k) {
                value(ptr + "/" + std::to_string(k));
                ws();
                if (i < s.size() && s[i] == ',') ++i;
                ws();
            }
            ++i;
        } else if (c == '"') {
            string();
        } else {
            while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != ',' && s[i] != ']' &&
                   s[i] != '}')
                ++i;
        }
    }
};

}  // namespace

std::string pointer_escape(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

JsonLines::JsonLines(std::string_view text) {
    Scanner sc{text, 0, 1, lines_};
    sc.value("");
}

int JsonLines::line_of(std::string pointer) const {
    for (;;) {
        if (auto it = lines_.find(pointer); it != lines_.end()) return it->second;
        if (pointer.empty()) return 1;
        pointer.erase(pointer.rfind('/'));
    }
}

int line_at(std::string_view text, std::size_t offset) {
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace delone::cli
