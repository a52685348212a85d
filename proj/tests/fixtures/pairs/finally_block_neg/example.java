try {
  out.write(data);
} catch (IOException e) {
  fail(e);
}
