#include "cli.hpp"

int main(int argc, char** argv) { return mtw::cli::run(argc, argv); }
