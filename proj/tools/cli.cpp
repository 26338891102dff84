#include "cli.hpp"

#include <morph/analyzer.hpp>
#include <morph/database.hpp>
#include <morph/lexicon.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

namespace morph::cli {

namespace {

constexpr std::string_view none_marker = "*** NONE ***";
constexpr std::string_view prompt = "recognizer>>";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fold(std::string word) {
    std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return word;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw db::DbError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::filesystem::path> as_paths(const std::vector<std::string>& names) {
    return {names.begin(), names.end()};
}

// Either rule mode over a lexicon or lookup mode over a compiled database.
class Source {
public:
    static Source open(const std::vector<std::string>& lexicons, const std::string& database) {
        if (lexicons.empty() == database.empty()) {
            throw UsageError("exactly one of --lexicon or --db is required");
        }
        if (!database.empty()) {
            return Source(db::Database::open(database));
        }
        auto paths = as_paths(lexicons);
        return Source(load_lexicon(paths));
    }

    // Prints the analyses of one word; returns false when there were none.
    bool print(const std::string& word, std::ostream& out) const {
        std::size_t n = 0;
        if (const auto* lex = std::get_if<Lexicon>(&impl_)) {
            for (const auto& a : recognize(word, *lex)) {
                out << render_lexical_form(a.lexical_form) << '\t' << render_parse(a.parse) << '\n';
                ++n;
            }
        } else {
            for (const auto& parse : std::get<db::Database>(impl_).lookup(word)) {
                out << render_flat_entry(parse) << '\n';
                ++n;
            }
        }
        if (n == 0) {
            out << none_marker << '\n';
        }
        return n > 0;
    }

private:
    explicit Source(Lexicon lex) : impl_(std::move(lex)) {}
    explicit Source(db::Database database) : impl_(std::move(database)) {}

    std::variant<Lexicon, db::Database> impl_;
};

void write_output(const std::string& path, std::string_view bytes, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << bytes;
    } else {
        db::write_file_atomic(path, bytes);
    }
}

} // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"English inflectional morphology: analyzer, generator and database tools", "morph"};
    app.require_subcommand(1);

    std::vector<std::string> lexicons;
    std::string database;
    std::string output;
    std::string flat;
    std::vector<std::string> words;
    bool fold_case = false;

    auto* recognize_cmd = app.add_subcommand("recognize", "Analyze words against a lexicon or database");
    recognize_cmd->add_option("words", words, "Words to analyze")->required();
    recognize_cmd->add_option("--lexicon", lexicons, "Lexicon file; repeat to merge several in order")
        ->allow_extra_args(false);
    recognize_cmd->add_option("--db", database, "Compiled database");
    recognize_cmd->add_flag("--fold-case", fold_case, "Lowercase input before analysis");

    auto* lookup_cmd = app.add_subcommand("lookup", "Look words up in a compiled database");
    lookup_cmd->add_option("words", words, "Words to look up")->required();
    lookup_cmd->add_option("--db", database, "Compiled database")->required();
    lookup_cmd->add_flag("--fold-case", fold_case, "Lowercase input before lookup");

    auto* generate_cmd = app.add_subcommand("generate", "Print every inflected form a lexicon generates");
    generate_cmd->add_option("--lexicon", lexicons, "Lexicon file; repeat to merge several in order")
        ->required()
        ->allow_extra_args(false);
    generate_cmd->add_option("lexical", words, "Only entries with these lexical forms");

    auto* compile_cmd = app.add_subcommand("compile", "Compile lexicon files into a database");
    compile_cmd->add_option("--lexicon", lexicons, "Lexicon file(s), merged in order")->required();
    compile_cmd->add_option("--out", output, "Database file to write")->required();

    auto* dump_cmd = app.add_subcommand("dump", "Dump a database as a flat file");
    dump_cmd->add_option("--db", database, "Compiled database")->required();
    dump_cmd->add_option("--out", output, "Flat file to write (default: standard output)");

    auto* restore_cmd = app.add_subcommand("restore", "Rebuild a database from a flat file");
    restore_cmd->add_option("--flat", flat, "Flat file")->required();
    restore_cmd->add_option("--out", output, "Database file to write")->required();

    auto* stats_cmd = app.add_subcommand("stats", "Report database statistics");
    stats_cmd->add_option("--db", database, "Compiled database")->required();

    auto* repl_cmd = app.add_subcommand("repl", "Interactive recognizer, one word per line");
    repl_cmd->add_option("--lexicon", lexicons, "Lexicon file; repeat to merge several in order")
        ->allow_extra_args(false);
    repl_cmd->add_option("--db", database, "Compiled database");
    repl_cmd->add_flag("--fold-case", fold_case, "Lowercase input before analysis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "morph: " << e.what() << '\n';
        return exit_usage;
    }

    auto prepare = [&](std::string word) { return fold_case ? fold(std::move(word)) : word; };

    try {
        if (recognize_cmd->parsed() || lookup_cmd->parsed()) {
            auto source = Source::open(lexicons, database);
            for (const auto& raw : words) {
                if (words.size() > 1) {
                    out << prompt << raw << '\n';
                }
                source.print(prepare(raw), out);
            }
        } else if (generate_cmd->parsed()) {
            auto lex = load_lexicon(as_paths(lexicons));
            for (const auto& entry : lex.entries()) {
                if (!words.empty() && std::find(words.begin(), words.end(), entry.lexical) == words.end()) {
                    continue;
                }
                for (const auto& form : generate(entry)) {
                    out << form.surface << '\t' << render_lexical_form(form.lexical_form) << '\t'
                        << render_parse(form.parse) << '\n';
                }
            }
        } else if (compile_cmd->parsed()) {
            auto lex = load_lexicon(as_paths(lexicons));
            db::write_file_atomic(output, db::compile(lex));
        } else if (dump_cmd->parsed()) {
            auto db = db::Database::open(database);
            write_output(output, db::dump_flat(db), out);
        } else if (restore_cmd->parsed()) {
            db::write_file_atomic(output, db::restore_flat(read_file(flat)));
        } else if (stats_cmd->parsed()) {
            auto s = db::stats(db::Database::open(database));
            out << "keys\t" << s.key_count << '\n'
                << "entries\t" << s.entry_count << '\n'
                << "single_entry_keys\t" << s.single_entry_keys << '\n'
                << "single_entry_fraction\t" << std::fixed << std::setprecision(4) << s.single_entry_fraction << '\n'
                << "mean_content_bytes\t" << s.mean_content_bytes << '\n'
                << "content_bytes\t" << s.content_bytes << '\n'
                << "combos\t" << s.combo_count << '\n'
                << "buckets\t" << s.bucket_count << '\n'
                << "file_size\t" << s.file_size << '\n';
        } else if (repl_cmd->parsed()) {
            auto source = Source::open(lexicons, database);
            std::string line;
            out << prompt << std::flush;
            while (std::getline(in, line)) {
                auto begin = line.find_first_not_of(" \t\r");
                if (begin != std::string::npos) {
                    auto end = line.find_last_not_of(" \t\r");
                    source.print(prepare(line.substr(begin, end - begin + 1)), out);
                }
                out << prompt << std::flush;
            }
            out << '\n';
        }
    } catch (const UsageError& e) {
        err << "morph: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "morph: " << e.what() << '\n';
        return exit_io;
    }
    return exit_ok;
}

} // namespace morph::cli
