#include <iostream>
#include <string>
#include <vector>

#include "anitv/cli.hpp"

namespace {

void usage() {
  std::cout << anitv::kToolVersion << "\n"
            << "usage: anitv <subcommand> [key=value ...]\n\n"
            << "subcommands:\n"
            << "  check      potential_file=F [samples=1000] [seed=42]\n"
            << "  anisotropy potential_file=F out=DIR [samples=360]\n"
            << "  converge   config=FILE | kind=halfspace|polygon|function_tv\n"
            << "             potential_file=F window=x0,y0,x1,y1 h_min=... h_max=...\n"
            << "             nu=x,y offset=c | polygon=x1,y1,... | layer=a;x1,y1,...\n"
            << "             [out=DIR] [sample_offset=a,b]\n"
            << "  denoise    input=IN.pgm output=OUT.pgm potential_file=F\n"
            << "             [lambda=1] [solver=first_order|oracle] [h=...]\n"
            << "             [max_iter=5000] [tol=1e-9] [refine=0] [trace=FILE]\n"
            << "  selftest   [seed=42]\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "help" || args[0] == "--help" || args[0] == "-h") {
    usage();
    return args.empty() ? 2 : 0;
  }
  return anitv::run_cli(args);
}
