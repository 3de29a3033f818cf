#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "ptorsion/numerics.hpp"

int main(int argc, char** argv) {
    ptorsion::WorkingPrecision wp(ptorsion::kDefaultDigits);
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}
