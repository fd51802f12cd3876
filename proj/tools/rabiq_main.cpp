// rabiq_main.cpp - executable wrapper around the library CLI
#include <rabiq/cli.hpp>

int main(int argc, char** argv) { return rabiq::run_cli(argc, argv); }
