// Single translation unit for the amalgamated Catch2 distribution; every test
// binary links against this object library.
#include <catch2/catch_amalgamated.cpp>
