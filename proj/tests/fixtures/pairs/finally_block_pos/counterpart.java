try {
  out.write(data);
} finally {
  closed = true;
  out.close();
}
