#include <cstdio>
int main() { std::puts("bipolar cli placeholder"); return 0; }
