#include "paraspin/cli.hpp"

int main(int argc, char** argv) { return paraspin::cli_main(argc, argv); }
