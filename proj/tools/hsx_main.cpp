#include "hsx/cli.hpp"

int main(int argc, char** argv) { return hsx::run(argc, argv); }
