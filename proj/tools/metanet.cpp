#include "metanet/cli.hpp"

int main(int argc, char** argv) { return metanet::cli::run(argc, argv); }
