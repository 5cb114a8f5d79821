// Distributed under the MIT License.
// See LICENSE for details.

int main() { return 1; }
