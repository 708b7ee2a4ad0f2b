#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "gfp/mzv.hpp"

int main(int argc, char** argv) {
    gfp::configure_reducer(12, std::nullopt);
    doctest::Context ctx(argc, argv);
    return ctx.run();
}
