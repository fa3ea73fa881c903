#include "dotgroup/cli.hpp"

int main(int argc, char** argv) { return dotgroup::run(argc, argv); }
