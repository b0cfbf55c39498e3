#include <iostream>

#include "commands.hpp"
#include "evssta/errors.hpp"

namespace evssta::cli {

int run(int argc, char** argv) {
    CLI::App app{"Statistical timing as the statistics of correlated extremes", "evssta"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    register_dist(app);
    register_mc(app);
    register_graph(app);
    register_noniid(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const evssta::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const CycleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const DuplicateEdgeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const PathExplosionError& e) {
        std::cerr << "error: " << e.what() << " (raise --cap to allow more paths)\n";
        return kExitCap;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}

}  // namespace evssta::cli
