#include <iostream>

int main() {
    std::cout << "congames cli placeholder\n";
    return 0;
}
