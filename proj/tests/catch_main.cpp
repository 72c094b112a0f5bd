// Builds the Catch2 v3 amalgamated implementation (including its main) once.
#include <catch2/catch_amalgamated.cpp>
