#include "latpot/cli.hpp"
int main() { return 0; }
