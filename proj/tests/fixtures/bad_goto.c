void broken(void) {
  while (pbool(1)) {
    pact(1);
  }
  goto nowhere;
}
