try {
  connect();
} catch (IOException e) {
  retry();
}
