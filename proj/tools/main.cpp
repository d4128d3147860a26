#include "ragcore/cli.hpp"

int main(int argc, char** argv) {
    return ragcore::run_cli(argc, argv);
}
