while (i <= n) {
  i++;
}
