#include "evssta/cli.hpp"

int main(int argc, char** argv) {
    return evssta::cli::run(argc, argv);
}
