#include <morph/service.hpp>

#include <CLI11.hpp>
#include <httplib.h>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Lexicon maintenance service", "morphd"};

    morph::service::Config config;
    std::string lexicon;
    std::string database;
    std::string flat;
    std::string static_dir;
    std::string host = "127.0.0.1";
    int port = 8080;

    app.add_option("--lexicon", lexicon, "Lexicon file (source of truth)")->envname("MORPH_LEXICON")->required();
    app.add_option("--db", database, "Database file to maintain")->envname("MORPH_DB")->required();
    app.add_option("--flat", flat, "Flat file to maintain (default: <db>.flat)")->envname("MORPH_FLAT");
    app.add_option("--static-dir", static_dir, "UI assets served at /")->envname("MORPH_STATIC_DIR");
    app.add_option("--host", host, "Listen address")->envname("MORPH_HOST");
    app.add_option("--port", port, "Listen port")->envname("MORPH_PORT");
    app.add_option("--max-pending", config.max_pending_writes, "Queued mutations before 503");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    config.lexicon = lexicon;
    config.database = database;
    config.flat = flat.empty() ? database + ".flat" : flat;
    config.static_dir = static_dir;

    try {
        morph::service::MaintenanceService service(config);
        httplib::Server server;
        service.mount(server);
        std::cerr << "morphd: serving " << lexicon << " on http://" << host << ':' << port << '\n';
        if (!server.listen(host, port)) {
            std::cerr << "morphd: cannot listen on " << host << ':' << port << '\n';
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "morphd: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
