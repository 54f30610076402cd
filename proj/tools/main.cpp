#include <iostream>

int main() {
  std::cout << "ptyx: placeholder\n";
  return 0;
}
