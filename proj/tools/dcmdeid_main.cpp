#include "dcmdeid/cli/run.hpp"

int main(int argc, char** argv) { return dcmdeid::cli::run(argc, argv); }
