/* Adapted fixture: the same function after a compile/decompile round trip,
 * with goto-based structuring and hexadecimal blinding ids. Elided regions
 * removed symmetrically with fig2b.c. */
void mp_factor_using_pollard_rho(void) {
  pact(0xc5);
  if (pbool(0x53)) {
    pact(0xc2);
  }
  pact(0xc1);
LAB_00100a0c:
  if (pbool(0x53)) {
  LAB_00100a2d:
    pact(0xb0);
    if (pbool(0xb7)) {
      pact(0xb6);
      if (pbool(0x53))
        goto LAB_00100b47;
      pact(0xad);
    }
    if (!pbool(0xb5)) {
      pact(0xb4);
      while (pbool(0x8a)) {
        pact(0xb0);
      }
      pact(0xad);
    }
    goto LAB_00100a2d;
  }
LAB_00100c34:
  pact(0x9b);
  return;
LAB_00100b47:
  do {
    pact(0xac);
  } while (pbool(0x53));
  pact(0xa6);
  if (!pbool(0xa5)) {
    if (pbool(0x53)) {
      pact(0xa4);
    }
    pact(0xa3);
  } else {
    pact(0xa1);
  }
  if (pbool(0xa0)) {
    pact(0x9f);
    goto LAB_00100c34;
  }
  pact(0x99);
  goto LAB_00100a0c;
}
