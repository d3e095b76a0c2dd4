#include "turanlab/cli.hpp"

int main(int argc, char** argv) { return turanlab::run_cli(argc, argv); }
