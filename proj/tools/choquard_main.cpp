#include <cstdio>
int main() { std::puts("choquard cli placeholder"); return 0; }
