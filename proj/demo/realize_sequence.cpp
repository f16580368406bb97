// Builds a germ for a non-increasing sequence given on the command line
// (default "3^1,2^2,1*") and prints its factors, generators and symbol.

#include <iostream>

#include "tbsym/tbsym.hpp"

int main(int argc, char** argv) {
    using namespace tbsym;
    const SymbolSpec spec = parse_symbol_spec(argc > 1 ? argv[1] : "3^1,2^2,1*");

    for (const auto& f : realization_factors(spec)) std::cout << "factor " << f.name() << '\n';
    const IdealPresentation germ = realize(spec);
    std::cout << print_ideal_file(germ);

    ChainOptions options;
    options.depth = prefix_length(spec) + 2;
    const ChainResult run = tb_symbol(germ, options);
    std::cout << "symbol   " << format_symbol(run.symbol) << '\n';
    std::cout << "expected " << format_symbol(to_symbol(spec)) << '\n';
    return same_symbol(run.symbol, to_symbol(spec)) ? 0 : 1;
}
