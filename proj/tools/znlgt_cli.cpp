#include <iostream>

int main() {
    std::cout << "znlgt cli: subcommands pending\n";
    return 0;
}
