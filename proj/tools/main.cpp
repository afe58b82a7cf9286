#include "cli.hpp"

int main(int argc, char** argv) {
    return kedge::cli::run_cli(argc, argv);
}
