#include "dqc1/harness.hpp"

int main(int argc, char** argv) { return dqc1::cli_main(argc, argv); }
