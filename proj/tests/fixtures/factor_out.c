/* The same function with the indicator assignment factored out. */
void factoring(void) {
  int x;
  x = 42;
  if (y != 0) {
    pact(1);
  } else {
    pact(2);
  }
}
