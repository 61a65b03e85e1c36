#include "kerrsol/cli.hpp"

int main(int argc, char** argv) { return kerrsol::cli_main(argc, argv); }
