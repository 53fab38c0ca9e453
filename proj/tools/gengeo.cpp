// gengeo: command-line driver for the generalized-geometry engine.
#include <cstdio>

int main() {
    std::fprintf(stderr, "gengeo: not implemented yet\n");
    return 1;
}
