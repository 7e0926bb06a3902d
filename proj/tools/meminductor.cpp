#include "meminductor/cli.hpp"

int main(int argc, char** argv) {
  return meminductor::run_cli(argc, argv);
}
