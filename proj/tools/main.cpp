#include "bubblestab/cli.hpp"

int main(int argc, char** argv) { return bubblestab::run_cli(argc, argv); }
