#include "caimdp/cli.hpp"

int main(int argc, char** argv) { return caimdp::cli::run(argc, argv); }
