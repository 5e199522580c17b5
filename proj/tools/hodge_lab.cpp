#include "hodge/cli.hpp"

int main(int argc, char** argv) { return hodge::cli::parse_and_dispatch(argc, argv); }
