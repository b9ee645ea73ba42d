#include "mlw/cli.hpp"

int main(int argc, char** argv) { return mlw::run_cli(argc, argv); }
