#include <morph/spelling.hpp>

#include <algorithm>
#include <set>

namespace morph {

namespace {

char lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_vowel(char c) {
    switch (lower(c)) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
        return true;
    default:
        return false;
    }
}

bool is_letter(char c) {
    c = lower(c);
    return c >= 'a' && c <= 'z';
}

bool is_consonant(char c) { return is_letter(c) && !is_vowel(c); }

bool ends_with(std::string_view s, std::string_view tail) {
    return s.size() >= tail.size() && s.substr(s.size() - tail.size()) == tail;
}

bool last_is(std::string_view s, char c) { return !s.empty() && lower(s.back()) == c; }

// Consonant + y, the context where y is rewritten to i.
bool consonant_y(std::string_view stem) {
    return stem.size() >= 2 && last_is(stem, 'y') && is_consonant(stem[stem.size() - 2]);
}

bool sibilant_final(std::string_view stem) {
    if (stem.empty()) {
        return false;
    }
    char c = lower(stem.back());
    if (c == 's' || c == 'z' || c == 'x') {
        return true;
    }
    if (stem.size() >= 2 && c == 'h') {
        char before = lower(stem[stem.size() - 2]);
        return before == 'c' || before == 's';
    }
    return false;
}

void attach(std::string& stem, Suffix suffix) {
    switch (suffix) {
    case Suffix::S:
        if (consonant_y(stem)) {
            stem.back() = 'i';
            stem += "es";
        } else if (sibilant_final(stem)) {
            stem += "es";
        } else {
            stem += 's';
        }
        return;

    case Suffix::ApostropheS:
        stem += last_is(stem, 's') ? "'" : "'s";
        return;

    case Suffix::Ing:
        if (ends_with(stem, "ie")) {
            stem.resize(stem.size() - 2);
            stem += 'y';
        } else if (last_is(stem, 'e')) {
            stem.pop_back();
        } else if (doubles_final_consonant(stem)) {
            stem += stem.back();
        }
        stem += "ing";
        return;

    case Suffix::Ed:
    case Suffix::Er:
    case Suffix::Est:
        if (consonant_y(stem)) {
            stem.back() = 'i';
        } else if (last_is(stem, 'e')) {
            stem.pop_back();
        } else if (doubles_final_consonant(stem)) {
            stem += stem.back();
        }
        stem += to_string(suffix);
        return;
    }
}

} // namespace

bool doubles_final_consonant(std::string_view root) {
    if (root.size() < 2) {
        return false;
    }
    char last = root.back();
    if (!is_consonant(last) || last_is(root, 'w') || last_is(root, 'x') || last_is(root, 'y')) {
        return false;
    }
    if (!is_vowel(root[root.size() - 2])) {
        return false;
    }
    if (root.size() >= 3 && is_vowel(root[root.size() - 3])) {
        return false;
    }
    // Monosyllabic: the vowel just checked is the only vowel group.
    std::size_t groups = 0;
    bool in_group = false;
    for (char c : root) {
        bool v = is_vowel(c);
        if (v && !in_group) {
            ++groups;
        }
        in_group = v;
    }
    return groups == 1;
}

std::string surface_of(const LexicalForm& form) {
    std::string stem = form.root;
    for (auto suffix : form.suffixes) {
        attach(stem, suffix);
    }
    return stem;
}

std::vector<LexicalForm> segmentations(std::string_view surface) {
    // Every rule rewrites at most the last two letters of the root and then
    // appends, so each root is some surface prefix with one of these edits.
    std::set<std::string> roots;
    for (std::size_t k = 1; k <= surface.size(); ++k) {
        std::string prefix(surface.substr(0, k));
        roots.insert(prefix);
        roots.insert(prefix + 'e');
        auto head = prefix.substr(0, k - 1);
        if (last_is(prefix, 'i')) {
            roots.insert(head + 'y');
        }
        if (last_is(prefix, 'y')) {
            roots.insert(head + "ie");
        }
        if (k >= 2 && prefix[k - 1] == prefix[k - 2]) {
            roots.insert(head);
        }
    }

    std::vector<LexicalForm> out;
    for (const auto& root : roots) {
        if (root.empty() || root.find('+') != std::string::npos) {
            continue;
        }
        for (const auto& sequence : legal_suffix_sequences()) {
            LexicalForm candidate{root, sequence};
            if (surface_of(candidate) == surface) {
                out.push_back(std::move(candidate));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const LexicalForm& a, const LexicalForm& b) {
        return render_lexical_form(a) < render_lexical_form(b);
    });
    return out;
}

} // namespace morph
