#include "skspin/experiment.hpp"

int main(int argc, char** argv) { return skspin::run_cli(argc, argv); }
