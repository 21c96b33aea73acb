// SPDX-License-Identifier: Apache-2.0

// placeholder; replaced by the full CLI
int main() { return 0; }
