#include <iostream>

int main() {
  std::cout << "hilbsq: placeholder\n";
  return 0;
}
