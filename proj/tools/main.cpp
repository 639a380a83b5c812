#include "ewens/harness.hpp"

int main(int argc, char** argv) { return ewens::run_cli(argc, argv); }
