#include "nls/cli.hpp"

int main(int argc, char** argv) { return nls::cli::parse_and_dispatch(argc, argv); }
