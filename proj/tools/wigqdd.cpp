#include "wigqdd/cli.h"

int main(int argc, char** argv) { return wigqdd::run_cli(argc, argv); }
